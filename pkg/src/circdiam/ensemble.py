"""Random (a, n) tuples from dilated domains T*D, and edge-length models.

Samples are uniform over the integer points (a, n) of T*D with
gcd(a_1, ..., a_k, n) = 1, obtained by rejection from the integer bounding
box.  Sample i is drawn from its own Philox stream keyed by (seed, i), so
any subset of indices can be generated independently and in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import BudgetExceeded, ValidationError
from .special import zeta

MIN_ACCEPTANCE = 1e-6
COUNT_BUDGET = 10**8
_BLOCK = 64


@dataclass(frozen=True)
class DomainSpec:
    """Bounded parameter domain D in R^{k+1}; points are x = (a_1, ..., a_k, n) / T.

    kind "fplus":  0 < x_1 < ... < x_k < x_{k+1} <= cap
    kind "f":      same, with x_k <= x_{k+1} / 2
    kind "custom": ``predicate`` on an (m, k+1) float array, inside ``box``
    """

    k: int
    kind: str = "fplus"
    cap: float = 1.0
    predicate: Callable | None = field(default=None, compare=False)
    box: tuple | None = None
    exact_volume: float | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"k must be >= 1, got {self.k}")
        if self.kind not in ("fplus", "f", "custom"):
            raise ValidationError(f"unknown domain kind {self.kind!r}")
        if not (self.cap > 0):
            raise ValidationError(f"cap must be positive, got {self.cap}")
        if self.kind == "custom":
            if self.predicate is None or self.box is None:
                raise ValidationError("custom domains need a predicate and a bounding box")
        else:
            c, k = self.cap, self.k
            vol = c ** (k + 1) / math.factorial(k + 1)
            if self.kind == "f":
                vol /= 2**k
            object.__setattr__(self, "exact_volume", vol)
            object.__setattr__(self, "box", ((0.0,) * (k + 1), (float(c),) * (k + 1)))

    @property
    def directed(self) -> bool:
        return self.kind != "f"

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(self.contains_many(x[None, :])[0])

    def contains_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if self.kind == "custom":
            return np.asarray(self.predicate(xs), dtype=bool)
        ok = (xs[:, 0] > 0) & np.all(np.diff(xs, axis=1) > 0, axis=1) & (xs[:, -1] <= self.cap)
        if self.kind == "f":
            ok &= 2 * xs[:, -2] <= xs[:, -1]
        return ok

    def integer_bound(self, T: float) -> int:
        """Largest coordinate of an integer point of T * box."""
        hi = max(self.box[1])
        return int(math.floor(Fraction(hi) * Fraction(T)))

    def _contains_integer(self, pts: np.ndarray, T: float) -> np.ndarray:
        if self.kind == "custom":
            return self.contains_many(pts / T)
        cap_t = self.integer_bound(T)
        ok = (pts[:, 0] > 0) & np.all(np.diff(pts, axis=1) > 0, axis=1) & (pts[:, -1] <= cap_t)
        if self.kind == "f":
            ok &= 2 * pts[:, -2] <= pts[:, -1]
        return ok


def domain_from_name(name: str, k: int = 2, cap: float = 1.0) -> DomainSpec:
    key = name.lower().replace("+", "plus")
    if key in ("fplus", "f_plus"):
        return DomainSpec(k=k, kind="fplus", cap=cap)
    if key == "f":
        return DomainSpec(k=k, kind="f", cap=cap)
    raise ValidationError(f"unknown domain {name!r}; expected 'fplus' or 'f'")


def substream(seed: int, index: int) -> np.random.Generator:
    """Generator for sample ``index``: Philox keyed by the 128-bit pair (seed, index)."""
    key = ((int(seed) & (2**64 - 1)) << 64) | (int(index) & (2**64 - 1))
    return np.random.Generator(np.random.Philox(key=key))


def _obviously_empty(domain: DomainSpec, T: float) -> bool:
    if domain.kind == "custom":
        return False
    top = domain.integer_bound(T)
    need = 2 * domain.k if domain.kind == "f" else domain.k + 1
    return top < need


def _draw_one(domain: DomainSpec, T: float, rng: np.random.Generator, top: int) -> tuple:
    k1 = domain.k + 1
    max_draws = int(1 / MIN_ACCEPTANCE)
    drawn = 0
    while drawn < max_draws:
        pts = rng.integers(1, top + 1, size=(_BLOCK, k1))
        drawn += _BLOCK
        ok = domain._contains_integer(pts, T)
        if np.any(ok):
            ok &= np.gcd.reduce(pts, axis=1) == 1
            hit = np.flatnonzero(ok)
            if hit.size:
                p = pts[hit[0]]
                return tuple(int(x) for x in p[:-1]), int(p[-1])
    raise BudgetExceeded(f"acceptance rate below {MIN_ACCEPTANCE:g} for T={T} in {domain}")


def sample_tuple(domain: DomainSpec, T: float, seed: int, index: int) -> tuple[tuple[int, ...], int]:
    """The ``index``-th sample of the stream identified by ``seed``."""
    if _obviously_empty(domain, T):
        raise BudgetExceeded(f"no admissible tuples in T*D for T={T}, {domain}")
    return _draw_one(domain, T, substream(seed, index), domain.integer_bound(T))


def sample_tuples(domain: DomainSpec, T: float, count: int, seed: int) -> list[tuple[tuple[int, ...], int]]:
    """``count`` i.i.d. uniform samples (a, n) from the coprime integer points of T*D."""
    count = int(count)
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if _obviously_empty(domain, T):
        raise BudgetExceeded(f"no admissible tuples in T*D for T={T}, {domain}")
    top = domain.integer_bound(T)
    return [_draw_one(domain, T, substream(seed, i), top) for i in range(count)]


def count_tuples(domain: DomainSpec, T: float) -> int:
    """Exact number of coprime integer points (a, n) in T*D."""
    top = domain.integer_bound(T)
    k = domain.k
    if top < 1:
        return 0
    if float(top) ** (k + 1) > COUNT_BUDGET:
        raise BudgetExceeded(f"count_tuples would enumerate {top}^{k + 1} points (> {COUNT_BUDGET:g})")
    total = 0
    for n in range(1, top + 1):
        amax = n - 1 if domain.kind != "custom" else top
        if domain.kind == "f":
            amax = n // 2
        if amax < 1:
            continue
        grids = np.meshgrid(*[np.arange(1, amax + 1)] * k, indexing="ij")
        pts = np.stack([g.ravel() for g in grids] + [np.full(grids[0].size, n)], axis=1)
        ok = domain._contains_integer(pts, T)
        if np.any(ok):
            total += int(np.count_nonzero(np.gcd.reduce(pts[ok], axis=1) == 1))
    return total


def asymptotic_count(domain: DomainSpec, T: float) -> float:
    """vol(D) T^{k+1} / zeta(k+1)."""
    if domain.exact_volume is None:
        raise ValidationError("asymptotic_count needs a domain with a known volume")
    return domain.exact_volume * T ** (domain.k + 1) / zeta(domain.k + 1)


@dataclass(frozen=True)
class LengthModel:
    """Edge lengths as a function of (a, n).

    "unit": l = e; "fixed": a stored vector; "frobenius": l(a/n) = a/n, realised
    as integer lengths a with scale 1/n.
    """

    kind: str = "unit"
    values: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("unit", "fixed", "frobenius"):
            raise ValidationError(f"unknown length model {self.kind!r}")
        if self.kind == "fixed":
            if not self.values or any(not (v > 0) for v in self.values):
                raise ValidationError(f"fixed lengths must be positive: {self.values}")
            object.__setattr__(self, "values", tuple(self.values))

    def __str__(self) -> str:
        if self.kind == "fixed":
            return "fixed:" + ",".join(repr(v) for v in self.values)
        return self.kind


def length_model_from_name(name: str) -> LengthModel:
    name = name.strip()
    if name == "unit":
        return LengthModel("unit")
    if name == "frobenius":
        return LengthModel("frobenius")
    if name.startswith("fixed:"):
        vals = []
        for tok in name[len("fixed:"):].split(","):
            v = float(tok)
            vals.append(int(v) if v.is_integer() else v)
        return LengthModel("fixed", tuple(vals))
    raise ValidationError(f"unknown length model {name!r}; expected unit, fixed:<v1,...>, frobenius")


def lengths_for(model: LengthModel, a, n: int) -> tuple[tuple, float]:
    """(lengths, scale): the graph uses ``lengths``; true lengths are lengths * scale."""
    k = len(a)
    if model.kind == "unit":
        return (1,) * k, 1.0
    if model.kind == "fixed":
        if len(model.values) != k:
            raise ValidationError(f"fixed lengths have size {len(model.values)}, need {k}")
        return model.values, 1.0
    return tuple(int(x) for x in a), 1.0 / n
