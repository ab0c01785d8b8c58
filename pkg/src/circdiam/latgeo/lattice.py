"""Lattice types, the kernel lattice of (a, n), rescaling and basis reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True, eq=False)
class IntegerLattice:
    """Full-rank sublattice of Z^k; rows of ``basis`` are basis vectors."""

    basis: np.ndarray
    det_abs: int

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=object)
        object.__setattr__(self, "basis", np.array([[int(x) for x in row] for row in b], dtype=np.int64))
        if self.basis.shape != (self.k, self.k):
            raise ValidationError(f"basis must be square, got shape {self.basis.shape}")
        d = abs(int_det(self.basis.tolist()))
        if d == 0:
            raise ValidationError("basis is singular")
        if d != self.det_abs:
            raise ValidationError(f"det_abs={self.det_abs} but |det(basis)|={d}")

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def covolume(self) -> float:
        return float(self.det_abs)

    def float_basis(self) -> np.ndarray:
        return self.basis.astype(float)

    def contains(self, m) -> bool:
        """Exact membership test for an integer vector."""
        coeffs = solve_rational(self.basis.tolist(), [int(x) for x in m])
        return all(c.denominator == 1 for c in coeffs)


@dataclass(frozen=True, eq=False)
class RealLattice:
    basis: np.ndarray
    covolume: float

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValidationError(f"basis must be square, got shape {b.shape}")
        object.__setattr__(self, "basis", b)
        d = abs(float(np.linalg.det(b)))
        if d <= 0 or not math.isclose(d, self.covolume, rel_tol=1e-9):
            raise ValidationError(f"covolume={self.covolume} but |det(basis)|={d}")

    @classmethod
    def from_basis(cls, basis) -> RealLattice:
        b = np.array(basis, dtype=float)
        return cls(basis=b, covolume=abs(float(np.linalg.det(b))))

    @property
    def k(self) -> int:
        return len(self.basis)

    def float_basis(self) -> np.ndarray:
        return self.basis

    def scaled(self, c: float) -> RealLattice:
        return RealLattice(basis=self.basis * c, covolume=self.covolume * abs(c) ** self.k)


def int_det(m: list[list[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[-1][-1]


def solve_rational(basis_rows, x) -> list[Fraction]:
    """Coefficients c with c @ basis = x, in exact rationals."""
    k = len(basis_rows)
    # augmented system basis^T c = x
    m = [[Fraction(basis_rows[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(k):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
    return [m[i][k] for i in range(k)]


def _integer_kernel_of_row(row: list[int]) -> list[list[int]]:
    """Basis of {x in Z^d : row . x = 0} by extended-gcd column operations.

    Keeps a unimodular U with row @ U = (0, ..., g, ..., 0); the columns of U
    other than the pivot span the kernel.
    """
    d = len(row)
    r = list(row)
    u = [[int(i == j) for j in range(d)] for i in range(d)]
    while sum(1 for v in r if v != 0) > 1:
        piv = min((j for j in range(d) if r[j] != 0), key=lambda j: abs(r[j]))
        for j in range(d):
            if j != piv and r[j] != 0:
                q = r[j] // r[piv]
                r[j] -= q * r[piv]
                for i in range(d):
                    u[i][j] -= q * u[i][piv]
    piv = next(j for j in range(d) if r[j] != 0)
    return [[u[i][j] for i in range(d)] for j in range(d) if j != piv]


def kernel_lattice(a, n: int) -> IntegerLattice:
    """The index-n lattice {m in Z^k : m . a = 0 mod n}, LLL-reduced."""
    a = [int(x) for x in a]
    n = int(n)
    if not a:
        raise ValidationError("need at least one generator")
    if any(not (0 < x < n) for x in a):
        raise ValidationError(f"need 0 < a_i < n, got a={a}, n={n}")
    if reduce(math.gcd, a, n) != 1:
        raise ValidationError(f"gcd(a, n) != 1 for a={a}, n={n}")
    kern = _integer_kernel_of_row(a + [n])
    basis = [v[:-1] for v in kern]  # injective: last coordinate is -(m.a)/n
    basis = lll_reduce_int(basis)
    return IntegerLattice(basis=np.array(basis, dtype=np.int64), det_abs=n)


def rescale(lat: IntegerLattice, n: int, lengths) -> RealLattice:
    """L_{n,a,l} = Lambda D_n(l), D_n(l) = diag(Pi^{-1/k} l_h), Pi = n prod(l)."""
    lengths = np.asarray(lengths, dtype=float)
    k = lat.k
    if len(lengths) != k:
        raise ValidationError(f"need {k} lengths, got {len(lengths)}")
    if np.any(lengths <= 0):
        raise ValidationError("lengths must be positive")
    if lat.det_abs != n:
        raise ValidationError(f"lattice index {lat.det_abs} != n={n}")
    big_pi = n * float(np.prod(lengths))
    diag = big_pi ** (-1.0 / k) * lengths
    basis = lat.basis.astype(float) * diag[None, :]
    return RealLattice(basis=basis, covolume=abs(float(np.linalg.det(basis))))


def gauss_reduce(basis):
    """Lagrange-Gauss reduction of a 2-D basis; exact for integer input."""
    u, v = [list(b) for b in basis]
    exact = all(isinstance(x, (int, np.integer, Fraction)) for x in u + v)
    if exact:
        u = [int(x) if not isinstance(x, Fraction) else x for x in u]
        v = [int(x) if not isinstance(x, Fraction) else x for x in v]

    def dot(p, q):
        return p[0] * q[0] + p[1] * q[1]

    if dot(u, u) > dot(v, v):
        u, v = v, u
    for _ in range(10_000):
        uu = dot(u, u)
        if exact:
            q = Fraction(dot(u, v), uu)
            mu = math.floor(q + Fraction(1, 2))
        else:
            mu = round(dot(u, v) / uu)
        v = [v[0] - mu * u[0], v[1] - mu * u[1]]
        if dot(v, v) >= uu:
            return [u, v]
        u, v = v, u
    raise RuntimeError("Gauss reduction did not terminate")


def lll_reduce_int(basis, delta: float = 0.99) -> list[list[int]]:
    """Textbook LLL on integer rows (small k); Gram-Schmidt in exact rationals."""
    b = [[int(x) for x in row] for row in basis]
    k = len(b)
    if k == 1:
        return b
    if k == 2:
        return [[int(x) for x in row] for row in gauss_reduce(b)]

    def dot(p, q):
        return sum(x * y for x, y in zip(p, q))

    def gso():
        bstar, mu = [], [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / dot(bstar[j], bstar[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
        return bstar, mu

    bstar, mu = gso()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = math.floor(mu[i][j] + Fraction(1, 2))
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                bstar, mu = gso()
        if dot(bstar[i], bstar[i]) >= (Fraction(delta) - mu[i][i - 1] ** 2) * dot(bstar[i - 1], bstar[i - 1]):
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            bstar, mu = gso()
            i = max(i - 1, 1)
    return b


def lll_reduce_float(basis, delta: float = 0.99) -> np.ndarray:
    """LLL for a small real basis (rows); returns a reduced basis of the same lattice."""
    b = np.array(basis, dtype=float)
    k = len(b)
    if k == 1:
        return b
    if k == 2:
        return np.array(gauss_reduce([[float(x) for x in row] for row in b]), dtype=float)

    def gso(b):
        q, r = np.linalg.qr(b.T)
        # b = r^T q^T; mu[i][j] = r[j, i] / r[j, j]
        diag = np.diag(r)
        mu = (r / diag[:, None]).T
        return diag**2, mu

    norms, mu = gso(b)
    i, guard = 1, 0
    while i < k:
        guard += 1
        if guard > 100_000:
            raise RuntimeError("LLL did not terminate")
        for j in range(i - 1, -1, -1):
            q = round(mu[i, j])
            if q:
                b[i] -= q * b[j]
                norms, mu = gso(b)
        if norms[i] >= (delta - mu[i, i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[[i - 1, i]] = b[[i, i - 1]]
            norms, mu = gso(b)
            i = max(i - 1, 1)
    return b


def reduced_float_basis(lat) -> np.ndarray:
    """A reduced basis of ``lat`` as floats (rows)."""
    if isinstance(lat, IntegerLattice):
        return np.array(lll_reduce_int(lat.basis.tolist()), dtype=float)
    return lll_reduce_float(lat.basis)
