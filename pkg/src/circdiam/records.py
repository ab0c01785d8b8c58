"""Result containers shared by the experiment runner and the Monte Carlo samplers."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

# meta keys that may differ between otherwise identical runs
VOLATILE_META = ("wall_time", "threads", "hash")


def _canonical(meta: dict) -> str:
    stable = {k: v for k, v in meta.items() if k not in VOLATILE_META}
    return json.dumps(stable, sort_keys=True, separators=(",", ":"), default=str)


def content_hash(values: np.ndarray, meta: dict) -> str:
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(values, dtype="<f8").tobytes())
    h.update(_canonical(meta).encode())
    return h.hexdigest()


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    """Sorted sample of a scalar statistic plus a description of how it was made."""

    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))
        if v.ndim != 1 or v.size == 0:
            raise ValidationError("an empirical distribution needs a nonempty 1-d sample")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        meta = dict(self.meta)
        meta["hash"] = content_hash(v, meta)
        object.__setattr__(self, "meta", meta)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def hash(self) -> str:
        return self.meta["hash"]

    def cdf(self, x):
        return np.searchsorted(self.values, x, side="right") / len(self.values)


@dataclass(frozen=True, eq=False)
class Histogram:
    bin_edges: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.bin_edges, dtype=float)
        m = np.asarray(self.masses, dtype=float)
        if e.ndim != 1 or len(m) != len(e) - 1 or np.any(np.diff(e) <= 0):
            raise ValidationError("bin edges must be strictly increasing with one more entry than masses")
        if np.any(m < 0) or abs(m.sum() - 1) > 1e-12:
            raise ValidationError("masses must be nonnegative and sum to 1")
        object.__setattr__(self, "bin_edges", e)
        object.__setattr__(self, "masses", m)

    @classmethod
    def from_values(cls, values, lo: float, hi: float, bins: int = 60) -> Histogram:
        values = np.asarray(values, dtype=float)
        edges = np.linspace(lo, hi, bins + 1)
        counts, _ = np.histogram(np.clip(values, lo, hi), bins=edges)
        return cls(edges, counts / counts.sum())
