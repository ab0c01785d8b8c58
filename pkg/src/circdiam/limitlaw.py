"""Closed-form limit densities for k = 2, their CDFs, tails and a Haar sampler on X_2.

p2, tilde_p2:          densities of the scaled directed / undirected diameter
p2_scl, tilde_p2_scl:  densities of the scaled shortest cycle lengths
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline
from scipy.special import xlogy

from .errors import ValidationError
from .latgeo.covering import covering_radius_2d
from .latgeo.enumerate import shortest_nonneg, shortest_weighted_l1
from .latgeo.lattice import RealLattice
from .latgeo.oracles import delta
from .latgeo.polygons import crosspolytope, simplex
from .records import EmpiricalDistribution
from .special import zeta

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
QUAD_TOL = 1e-10


def _scalar(f):
    def wrapped(R):
        if np.ndim(R) == 0:
            return f(float(R))
        return np.array([f(float(r)) for r in np.ravel(R)]).reshape(np.shape(R))

    wrapped.__name__ = f.__name__
    wrapped.__doc__ = f.__doc__
    return wrapped


@_scalar
def p2(R):
    """Density of lim n^{-1/2}(diam C_n^+(a) + 2)."""
    if R <= SQRT3:
        return 0.0
    if R <= 2:
        return 12 / math.pi * (R / SQRT3 - math.sqrt(max(4 - R * R, 0.0)))
    s3 = math.sqrt(R * R - 3)
    s4 = math.sqrt(R * R - 4)
    # 1 - (R + 3 s4) / (4 s3), rationalised twice to avoid cancellation
    w = 4 / (R * R - 2 + R * s4)
    gap = 6 * w / ((4 * s3 + R + 3 * s4) * 4 * s3)
    acos = 2 * math.asin(math.sqrt(gap / 2))
    return 12 / math.pi**2 * (R * SQRT3 * acos + 1.5 * s4 * math.log1p(-1 / (R * R - 3)))


def _g(t):
    """t log(1 + 1/t), continuous at t = 0."""
    return 0.0 if t == 0 else t * math.log1p(1 / t)


def _g_diff_series(u, w, terms=10):
    """g(u) - g(w) for large u, w from g(t) = sum_j (-1)^{j+1} t^{1-j} / j."""
    return sum((-1) ** (j + 1) / j * (u ** (1 - j) - w ** (1 - j)) for j in range(2, terms + 2))


@_scalar
def tilde_p2(R):
    """Density of lim n^{-1/2} diam C_n(a)."""
    if R <= 1 / SQRT2:
        return 0.0
    u = 2 * R * R - 1
    if R < 1:
        v = 1 - R * R
        # v log(R^2 / v) with the v -> 0 limit 0
        s = _g(u) + xlogy(v, 1 - v) - xlogy(v, v)
    elif R == 1:
        s = _g(u)
    elif R < 30:
        s = _g(u) - _g(R * R - 1)
    else:
        s = _g_diff_series(u, R * R - 1)
    return max(24 / math.pi**2 * s / R, 0.0)


@_scalar
def p2_scl(R):
    """Density of the scaled shortest directed cycle length."""
    if R <= 0:
        return 0.0
    c = 6 / math.pi**2
    if R <= 1:
        return c * R
    if R <= 2:
        return c * (2 / R * (1 + 2 * math.log(R)) - R)
    s = math.sqrt(1 - 4 / (R * R))
    return c * (2 / R - 4 / (R + math.sqrt(R * R - 4)) - 4 / R * math.log1p(-(2 / (R * R)) / (1 + s)))


@_scalar
def tilde_p2_scl(R):
    """Density of the scaled shortest undirected cycle length."""
    if R <= 0 or R >= SQRT2:
        return 0.0
    c = 12 / math.pi**2
    if R <= 1:
        return c * R
    u = 2 - R * R
    return max(c * (u + u * math.log(R * R) - xlogy(u, u)) / R, 0.0)


def tail_Pk(R: float, k: int) -> float:
    """Leading term (k+1)/(2 zeta(k)) R^{-k} of P_k(R)."""
    _check_tail(R, k)
    return (k + 1) / (2 * zeta(k)) * R ** (-k)


def tail_tildePk(R: float, k: int) -> float:
    """Leading term R^{-k} / (2 zeta(k)) of the undirected tail."""
    _check_tail(R, k)
    return R ** (-k) / (2 * zeta(k))


def _check_tail(R, k):
    if not (R > 0) or int(k) != k or k < 2:
        raise ValidationError(f"need R > 0 and integer k >= 2, got R={R}, k={k}")


@dataclass(frozen=True)
class SupportConstants:
    k: int
    directed_support_lo: float | None
    directed_lower_bound: float
    undirected_support_lo: float | None
    undirected_lower_bound: float
    strict: bool


def support_constants(k: int) -> SupportConstants:
    """Lower support ends of the limit laws; for k >= 3 only strict bounds are known."""
    if int(k) != k or k < 2:
        raise ValidationError(f"k must be an integer >= 2, got {k}")
    k = int(k)
    root = math.factorial(k) ** (1 / k)
    return SupportConstants(
        k=k,
        directed_support_lo=SQRT3 if k == 2 else None,
        directed_lower_bound=root,
        undirected_support_lo=1 / SQRT2 if k == 2 else None,
        undirected_lower_bound=root / 2,
        strict=k >= 3,
    )


_DENSITIES = {
    # name: (density, lower end, upper end, branch points)
    "p2": (p2, SQRT3, math.inf, (2.0,)),
    "tilde_p2": (tilde_p2, 1 / SQRT2, math.inf, (1.0,)),
    "p2_scl": (p2_scl, 0.0, math.inf, (1.0, 2.0)),
    "tilde_p2_scl": (tilde_p2_scl, 0.0, SQRT2, (1.0,)),
}
LAW_NAMES = tuple(_DENSITIES)

_GRID_LINEAR_END = 12.0
_GRID_END = 1e4
_NEAR_SINGULAR = 0.05


class LimitLaw:
    """Density with a quadrature CDF, cached on construction.

    The CDF is tabulated by adaptive quadrature between nodes that include
    every branch point and interpolated by cubic Hermite splines, using the
    density as the exact derivative at each node.  Beyond the table the tail
    mass is integrated on demand.
    """

    def __init__(self, name: str):
        if name not in _DENSITIES:
            raise ValidationError(f"unknown law {name!r}; expected one of {LAW_NAMES}")
        f, lo, hi, breaks = _DENSITIES[name]
        self.name = name
        self.density: Callable = f
        self.support_lo = lo
        self.support_hi = hi
        self.breakpoints = breaks
        top = hi if math.isfinite(hi) else _GRID_END
        lin_end = min(top, _GRID_LINEAR_END)
        nodes = set(np.linspace(lo, lin_end, int(round((lin_end - lo) / 0.01)) + 1).tolist())
        nodes.update(b for b in breaks if lo < b < lin_end)
        if top > lin_end:
            nodes.update(np.geomspace(lin_end, top, 600).tolist())
        nodes = np.array(sorted(nodes))
        pieces = [integrate.quad(f, a, b, epsabs=QUAD_TOL, epsrel=1e-12, limit=200)[0] for a, b in zip(nodes[:-1], nodes[1:])]
        cum = np.concatenate([[0.0], np.cumsum(pieces)])
        self._nodes = nodes
        self._top = top
        if math.isfinite(hi):
            self._tail_top = 0.0
        else:
            self._tail_top = integrate.quad(f, top, np.inf, epsabs=QUAD_TOL, limit=200)[0]
        self.total_mass = float(cum[-1] + self._tail_top)
        self._cum = cum
        self._spline = CubicHermiteSpline(nodes, cum, f(nodes))
        # points where the density has an infinite derivative or a kink
        self._singular = np.array([lo, *breaks] + ([hi] if math.isfinite(hi) else []))

    def __repr__(self) -> str:
        return f"LimitLaw({self.name!r})"

    def cdf(self, R):
        R_arr = np.asarray(R, dtype=float)
        out = np.where(R_arr <= self.support_lo, 0.0, self._spline(np.clip(R_arr, self.support_lo, self._top)))
        near = np.min(np.abs(R_arr[..., None] - self._singular), axis=-1) < _NEAR_SINGULAR
        near &= (R_arr > self.support_lo) & (R_arr < self._top)
        if np.any(near):
            out = np.array(out, dtype=float)
            out[near] = [self._exact_cdf(r) for r in R_arr[near]]
        far = R_arr > self._top
        if np.any(far):
            if math.isfinite(self.support_hi):
                out = np.where(far, 1.0, out)
            else:
                tails = [integrate.quad(self.density, r, np.inf, epsabs=QUAD_TOL)[0] for r in R_arr[far]]
                out = out.copy()
                out[far] = 1.0 - np.array(tails)
        out = np.clip(out, 0.0, 1.0)
        return float(out) if np.ndim(R) == 0 else out

    def _exact_cdf(self, r: float) -> float:
        i = int(np.searchsorted(self._nodes, r, side="right")) - 1
        return float(self._cum[i] + integrate.quad(self.density, self._nodes[i], r, epsabs=1e-13, limit=200)[0])

    def sf(self, R):
        """1 - cdf(R), with the tail integrated directly for accuracy."""
        if np.ndim(R) == 0:
            r = float(R)
            if r <= self.support_lo:
                return 1.0
            if r >= self.support_hi:
                return 0.0
            return integrate.quad(self.density, r, self.support_hi, epsabs=QUAD_TOL, limit=200)[0]
        return np.array([self.sf(r) for r in np.ravel(R)]).reshape(np.shape(R))


@lru_cache(maxsize=None)
def get_law(name: str) -> LimitLaw:
    return LimitLaw(name)


def normalization(name: str) -> float:
    """Integral of the density over its support, splitting at branch points."""
    f, lo, hi, breaks = _DENSITIES[name]
    cuts = [lo, *[b for b in breaks if lo < b < hi]]
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        total += integrate.quad(f, a, b, epsabs=QUAD_TOL, limit=200)[0]
    return total + integrate.quad(f, cuts[-1], hi, epsabs=QUAD_TOL, limit=200)[0]


def omega_measure() -> float:
    """(6/pi^2) * integral over Omega of delta(alpha, beta, gamma)^{-2}."""

    def inner(alpha, gamma, beta):
        return delta(alpha, beta, gamma) ** -2

    val, _ = integrate.nquad(
        inner,
        [(0, 1), lambda beta: (1 - beta, 1), (0, 1)],
        opts={"epsabs": 1e-10, "epsrel": 1e-10},
    )
    return 6 / math.pi**2 * val


def _haar_params(count: int, seed: int):
    rng = np.random.Generator(np.random.Philox(key=int(seed) & (2**64 - 1)))
    x = rng.random(count) - 0.5
    u = rng.random(count)
    phi = math.pi * rng.random(count)
    y = np.sqrt(1 - x * x) / (1 - u)
    return x, y, phi


def _iwasawa_basis(x, y, phi) -> np.ndarray:
    n = np.array([[1.0, x], [0.0, 1.0]])
    a = np.diag([math.sqrt(y), 1 / math.sqrt(y)])
    c, s = math.cos(phi), math.sin(phi)
    k = np.array([[c, s], [-s, c]])
    return n @ a @ k


def haar_sample_x2(count: int, seed: int) -> list[RealLattice]:
    """I.i.d. unimodular planar lattices Z^2 n(x) a(y) k(phi) from the invariant measure.

    (x, y) is uniform for dx dy / y^2 on the modular fundamental domain
    |x| <= 1/2, x^2 + y^2 >= 1 and phi is uniform on [0, pi).
    """
    count = int(count)
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    return [RealLattice(basis=_iwasawa_basis(*p), covolume=1.0) for p in zip(*_haar_params(count, seed))]


def _statistic(name: str) -> Callable[[RealLattice], float]:
    if name == "p2":
        return lambda L: covering_radius_2d(L, simplex(), exact=False)
    if name == "tilde_p2":
        return lambda L: covering_radius_2d(L, crosspolytope(), exact=False)
    if name == "p2_scl":
        return lambda L: shortest_nonneg(L)
    if name == "tilde_p2_scl":
        return lambda L: shortest_weighted_l1(L)[1]
    raise ValidationError(f"no k = 2 limit statistic named {name!r}; expected one of {LAW_NAMES}")


def mc_limit_estimate(law: str, count: int, seed: int) -> EmpiricalDistribution:
    """Sample the defining lattice statistic of ``law`` over Haar-random L in X_2."""
    stat = _statistic(law)
    lattices = haar_sample_x2(count, seed)
    vals = np.array([stat(L) for L in lattices])
    return EmpiricalDistribution(vals, {"law": law, "count": int(count), "seed": int(seed), "source": "haar_x2"})
