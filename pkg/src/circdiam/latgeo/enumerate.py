"""Bounded lattice enumeration: shortest vectors and the torus distance functions.

All searches reduce the basis first and then enumerate the coefficient box
that provably contains every lattice vector of weighted l1 size <= bound:
for x = c B, |c_i| <= bound * max_h |B^{-1}_{h,i}| / l_h.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..errors import BudgetExceeded, ValidationError
from .lattice import IntegerLattice, RealLattice, lll_reduce_int, reduced_float_basis

MAX_DOUBLINGS = 64
_SNAP = 1e-12


def _weights(lengths, k):
    w = np.ones(k) if lengths is None else np.asarray(lengths, dtype=float)
    if w.shape != (k,) or np.any(w <= 0):
        raise ValidationError(f"need {k} positive lengths, got {lengths}")
    return w


def coefficient_box(basis: np.ndarray, bound: float, weights: np.ndarray) -> np.ndarray:
    """Integer coefficient vectors c with ||c B||_w <= bound possible."""
    binv = np.linalg.inv(basis)
    radius = bound * np.max(np.abs(binv) / weights[:, None], axis=0)
    ranges = [range(-int(math.floor(r + 1e-9)), int(math.floor(r + 1e-9)) + 1) for r in radius]
    return np.array(list(itertools.product(*ranges)), dtype=np.int64)


def lattice_vectors(basis: np.ndarray, bound: float, weights: np.ndarray) -> np.ndarray:
    """All lattice vectors with weighted l1 norm <= bound (including 0)."""
    coeffs = coefficient_box(basis, bound, weights)
    vecs = coeffs @ basis
    keep = np.abs(vecs) @ weights <= bound * (1 + _SNAP) + _SNAP
    return vecs[keep]


def _int_basis(lat):
    if isinstance(lat, IntegerLattice):
        return np.array(lll_reduce_int(lat.basis.tolist()), dtype=np.int64)
    return None


def shortest_weighted_l1(lat, lengths=None):
    """Nonzero lattice vector minimising sum_h l_h |m_h|; returns (vector, value)."""
    k = lat.k
    w = _weights(lengths, k)
    ib = _int_basis(lat)
    basis = ib.astype(float) if ib is not None else reduced_float_basis(lat)
    best = float(np.min(np.abs(basis) @ w))
    coeffs = coefficient_box(basis, best, w)
    coeffs = coeffs[np.any(coeffs != 0, axis=1)]
    if ib is not None:
        vecs = coeffs @ ib  # exact integer vectors
        vals = np.abs(vecs) @ w
    else:
        vecs = coeffs @ basis
        vals = np.abs(vecs) @ w
    i = int(np.argmin(vals))
    vec = vecs[i]
    val = float(vals[i])
    return (tuple(int(x) for x in vec) if ib is not None else tuple(float(x) for x in vec)), val


def _budget_start(basis: np.ndarray, w: np.ndarray) -> float:
    # half the sum of weighted basis norms bounds the symmetric covering radius
    return 4.0 * 0.5 * float(np.sum(np.abs(basis) @ w))


def shortest_nonneg(lat, lengths=None) -> float:
    """min m.l over nonzero lattice vectors m with every m_h >= 0."""
    k = lat.k
    w = _weights(lengths, k)
    ib = _int_basis(lat)
    basis = ib.astype(float) if ib is not None else reduced_float_basis(lat)
    budget = _budget_start(basis, w)
    for _ in range(MAX_DOUBLINGS):
        coeffs = coefficient_box(basis, budget, w)
        coeffs = coeffs[np.any(coeffs != 0, axis=1)]
        if ib is not None:
            vecs = coeffs @ ib
            ok = np.all(vecs >= 0, axis=1)
        else:
            vecs = coeffs @ basis
            ok = np.all(vecs >= -_SNAP, axis=1)
        if np.any(ok):
            vals = vecs[ok] @ w
            vals = vals[vals <= budget * (1 + _SNAP)]
            if vals.size:
                return float(vals.min())
        budget *= 2
    raise BudgetExceeded("shortest_nonneg: no nonnegative lattice vector found")


def _reduce_into_cell(basis: np.ndarray, y: np.ndarray) -> np.ndarray:
    c = np.linalg.solve(basis.T, y)
    return y - np.floor(c) @ basis


def _as_float_lattice(L):
    if isinstance(L, IntegerLattice):
        return L.basis.astype(float)
    if isinstance(L, RealLattice):
        return L.basis
    raise ValidationError(f"not a lattice: {L!r}")


def psi_directed(L, y) -> float:
    """min of z_1 + ... + z_k over z in (y + L) with z >= 0."""
    basis = reduced_float_basis(L) if isinstance(L, RealLattice) else _as_float_lattice(L)
    y0 = _reduce_into_cell(basis, np.asarray(y, dtype=float))
    w = np.ones(len(y0))
    norm_y = float(np.abs(y0).sum())
    budget = _budget_start(basis, w)
    for _ in range(MAX_DOUBLINGS):
        vecs = lattice_vectors(basis, budget + norm_y, w)
        z = y0[None, :] + vecs
        ok = np.all(z >= -_SNAP, axis=1)
        if np.any(ok):
            vals = np.clip(z[ok], 0, None).sum(axis=1)
            m = float(vals.min())
            if m <= budget:
                return m
        budget *= 2
    raise BudgetExceeded("psi_directed: enumeration budget exhausted")


def psi_undirected(L, y) -> float:
    """min ||z||_1 over z in y + L (the l1 distance from -y to L)."""
    basis = reduced_float_basis(L) if isinstance(L, RealLattice) else _as_float_lattice(L)
    y0 = _reduce_into_cell(basis, np.asarray(y, dtype=float))
    w = np.ones(len(y0))
    corners = np.array(list(itertools.product((0, -1), repeat=len(y0)))) @ basis
    best = float(np.min(np.abs(y0[None, :] + corners).sum(axis=1)))
    vecs = lattice_vectors(basis, best + float(np.abs(y0).sum()), w)
    vals = np.abs(y0[None, :] + vecs).sum(axis=1)
    return float(max(vals.min(), 0.0))


def _psi_batch(basis: np.ndarray, ys: np.ndarray, directed: bool, chunk: int = 65536) -> np.ndarray:
    """Psi (directed) or tilde-Psi for many points y already inside the cell."""
    k = basis.shape[0]
    w = np.ones(k)
    ymax = float(np.abs(ys).sum(axis=1).max()) if len(ys) else 0.0
    out = np.full(len(ys), np.inf)
    pending = np.arange(len(ys))
    bound = _budget_start(basis, w) / 4.0 + ymax if not directed else _budget_start(basis, w)
    for _ in range(MAX_DOUBLINGS):
        vecs = lattice_vectors(basis, bound + ymax, w)
        still = []
        for start in range(0, len(pending), chunk):
            idx = pending[start : start + chunk]
            z = ys[idx][:, None, :] + vecs[None, :, :]
            if directed:
                feasible = np.all(z >= -_SNAP, axis=2)
                vals = np.where(feasible, np.clip(z, 0, None).sum(axis=2), np.inf)
            else:
                vals = np.abs(z).sum(axis=2)
            m = vals.min(axis=1)
            # certified when the minimiser's norm could not exceed the search bound
            ok = m <= bound
            out[idx[ok]] = m[ok]
            still.append(idx[~ok])
        pending = np.concatenate(still) if still else pending[:0]
        if not len(pending):
            return out
        bound *= 2
    raise BudgetExceeded("psi batch enumeration budget exhausted")


def torus_moment_mc(L, alpha: int, directed: bool, samples: int, seed: int, return_stderr: bool = False):
    """Monte Carlo estimate of the integral of Psi_L^alpha over R^k / L.

    Points are uniform in the fundamental parallelogram of a reduced basis;
    the integral is covolume times the sample mean.
    """
    samples = int(samples)
    if samples <= 0:
        raise ValidationError(f"samples must be positive, got {samples}")
    alpha = int(alpha)
    if alpha < 1:
        raise ValidationError(f"alpha must be a positive integer, got {alpha}")
    basis = reduced_float_basis(L) if isinstance(L, RealLattice) else _as_float_lattice(L)
    covol = abs(float(np.linalg.det(basis)))
    rng = np.random.Generator(np.random.Philox(key=int(seed) & (2**64 - 1)))
    u = rng.random((samples, basis.shape[0]))
    ys = u @ basis
    vals = _psi_batch(basis, ys, directed) ** alpha
    est = covol * float(vals.mean())
    if return_stderr:
        return est, covol * float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    return est
