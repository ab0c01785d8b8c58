"""Scaled-statistic experiments over random circulant ensembles."""

from __future__ import annotations

import math
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ..ensemble import LengthModel, domain_from_name, length_model_from_name, lengths_for, sample_tuple
from ..errors import CircdiamError, ValidationError
from ..latgeo.enumerate import shortest_weighted_l1
from ..latgeo.lattice import kernel_lattice
from ..records import EmpiricalDistribution
from ..rings import build_circulant, diameter, distance_profile, moment, scl_directed

THREADS_ENV = "CIRCDIAM_THREADS"

STATISTICS = (
    "diam_directed",
    "diam_directed_shifted",
    "diam_undirected",
    "diam_undirected_shifted",
    "scl_directed",
    "scl_undirected",
)
UNDIRECTED = ("diam_undirected", "diam_undirected_shifted", "scl_undirected")
_MOMENT = re.compile(r"^moment\((\d+)\)$")


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        val = int(raw)
    except ValueError:
        raise ValidationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if val < 1:
        raise ValidationError(f"{THREADS_ENV} must be >= 1, got {val}")
    return val


def moment_order(statistic: str) -> int | None:
    m = _MOMENT.match(statistic)
    return int(m.group(1)) if m else None


@dataclass(frozen=True)
class ExperimentConfig:
    k: int = 2
    domain: str = "fplus"
    T: float = 1000.0
    samples: int = 1000
    seed: int = 0
    statistic: str = "diam_directed_shifted"
    length_model: str = "unit"
    threads: int = field(default_factory=default_threads)
    cap: float = 1.0

    def __post_init__(self):
        if isinstance(self.length_model, LengthModel):
            object.__setattr__(self, "length_model", str(self.length_model))
        if int(self.samples) != self.samples or self.samples < 1:
            raise ValidationError(f"samples must be a positive integer, got {self.samples}")
        if int(self.k) != self.k or self.k < 1:
            raise ValidationError(f"k must be a positive integer, got {self.k}")
        if not (self.T >= self.k + 1):
            raise ValidationError(f"T must be >= k + 1 = {self.k + 1}, got {self.T}")
        if int(self.threads) != self.threads or self.threads < 1:
            raise ValidationError(f"threads must be a positive integer, got {self.threads}")
        order = moment_order(self.statistic)
        if self.statistic not in STATISTICS and (order is None or order < 1):
            raise ValidationError(f"unknown statistic {self.statistic!r}; expected one of {STATISTICS} or moment(<alpha>)")
        dom = domain_from_name(self.domain, self.k, self.cap)
        if self.statistic in UNDIRECTED and dom.kind != "f":
            raise ValidationError(f"statistic {self.statistic} needs the undirected domain 'f'")
        length_model_from_name(self.length_model)

    @property
    def directed(self) -> bool:
        if self.statistic in UNDIRECTED:
            return False
        if moment_order(self.statistic) is not None:
            return domain_from_name(self.domain, self.k, self.cap).directed
        return True

    def describe(self) -> dict:
        return asdict(self)


def raw_statistic(statistic: str, a, n: int, lengths, directed: bool) -> float:
    """Unscaled statistic of one graph (integers where possible)."""
    if statistic == "scl_undirected":
        return shortest_weighted_l1(kernel_lattice(a, n), lengths)[1]
    spec = build_circulant(n, a, lengths, directed=directed)
    profile = distance_profile(spec)
    shift = sum(lengths)
    if statistic == "diam_directed":
        return diameter(profile)
    if statistic == "diam_directed_shifted":
        return diameter(profile) + shift
    if statistic == "diam_undirected":
        return diameter(profile)
    if statistic == "diam_undirected_shifted":
        return diameter(profile) + shift / 2
    if statistic == "scl_directed":
        return scl_directed(profile)
    order = moment_order(statistic)
    if order is not None:
        return moment(profile, order)
    raise ValidationError(f"unknown statistic {statistic!r}")


def scaled_statistic(config: ExperimentConfig, a, n: int) -> float:
    model = length_model_from_name(config.length_model)
    lengths, scale = lengths_for(model, a, n)
    val = raw_statistic(config.statistic, a, n, lengths, config.directed)
    power = moment_order(config.statistic) or 1
    if model.kind == "frobenius":
        factor = scale
    else:
        factor = (n * math.prod(lengths)) ** (-1.0 / len(a))
    return float(val) * factor**power


def _evaluate(config: ExperimentConfig, index: int) -> float:
    dom = domain_from_name(config.domain, config.k, config.cap)
    a, n = sample_tuple(dom, config.T, config.seed, index)
    try:
        return scaled_statistic(config, a, n)
    except CircdiamError as exc:
        raise type(exc)(f"{exc} [a={a}, n={n}, index={index}]") from exc


def _evaluate_range(args) -> list[float]:
    config, lo, hi = args
    return [_evaluate(config, i) for i in range(lo, hi)]


def run_experiment(config: ExperimentConfig) -> EmpiricalDistribution:
    """Sample, compute and scale the statistic; the output does not depend on ``threads``."""
    t0 = time.perf_counter()
    n = config.samples
    if config.threads == 1:
        values = _evaluate_range((config, 0, n))
    else:
        size = max(1, math.ceil(n / (8 * config.threads)))
        tasks = [(config, lo, min(lo + size, n)) for lo in range(0, n, size)]
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            values = [v for chunk in pool.map(_evaluate_range, tasks) for v in chunk]
    meta = config.describe()
    meta["wall_time"] = time.perf_counter() - t0
    return EmpiricalDistribution(np.array(values, dtype=float), meta)
