"""Experiment runner, statistics, serialisation and the command line."""

from ..records import EmpiricalDistribution, Histogram
from .experiment import STATISTICS, ExperimentConfig, run_experiment, scaled_statistic
from .io import Table, emit, from_json, to_csv, to_json
from .stats import frobenius, frobenius_of, histogram, ks_statistic

__all__ = [
    "STATISTICS",
    "EmpiricalDistribution",
    "ExperimentConfig",
    "Histogram",
    "Table",
    "emit",
    "from_json",
    "frobenius",
    "frobenius_of",
    "histogram",
    "ks_statistic",
    "run_experiment",
    "scaled_statistic",
    "to_csv",
    "to_json",
]
