"""Goodness of fit, histograms and the Frobenius number via circulant diameters."""

from __future__ import annotations

import math
from functools import reduce

import numpy as np

from ..errors import ValidationError
from ..records import EmpiricalDistribution, Histogram
from ..rings import build_circulant, diameter

DEFAULT_BINS = 60


def ks_statistic(emp, cdf) -> float:
    """sup |F_N - F| evaluated on both sides of every order statistic."""
    x = emp.values if isinstance(emp, EmpiricalDistribution) else np.sort(np.asarray(emp, dtype=float))
    if x.size == 0:
        raise ValidationError("empty sample")
    n = x.size
    f = np.asarray(cdf(x), dtype=float)
    upper = np.arange(1, n + 1) / n - f
    lower = f - np.arange(n) / n
    return float(max(upper.max(), lower.max()))


def histogram(emp: EmpiricalDistribution, support_lo: float, bins: int = DEFAULT_BINS) -> Histogram:
    """Uniform bins over [support_lo - 0.05, max + 0.05]."""
    lo = support_lo - 0.05
    hi = max(float(emp.values[-1]), lo) + 0.05
    return Histogram.from_values(emp.values, lo, hi, bins)


def frobenius(a, n: int) -> int:
    """Largest integer not in the semigroup generated by a_1, ..., a_k, n (or -1).

    Uses F = diam C_n^+(l = a, a) - n: a shortest path to residue j mod n is
    the least representable number congruent to j.
    """
    a = [int(x) for x in a]
    n = int(n)
    if not a:
        raise ValidationError("need at least one generator besides n")
    if any(x <= 0 for x in a) or any(x >= y for x, y in zip(a, a[1:])) or a[-1] >= n:
        raise ValidationError(f"need 0 < a_1 < ... < a_k < n, got a={a}, n={n}")
    if reduce(math.gcd, a, n) != 1:
        raise ValidationError(f"generators {a + [n]} are not coprime")
    return int(diameter(build_circulant(n, a, lengths=a, directed=True))) - n


def frobenius_of(gens) -> int:
    """Frobenius number of an unordered generator set (largest generator plays n)."""
    g = sorted({int(x) for x in gens})
    if len(g) != len(list(gens)):
        raise ValidationError(f"generators must be distinct, got {list(gens)}")
    if len(g) < 2:
        if g == [1]:
            return -1
        raise ValidationError("need at least two generators")
    if g[0] == 1:
        return -1
    return frobenius(g[:-1], g[-1])
