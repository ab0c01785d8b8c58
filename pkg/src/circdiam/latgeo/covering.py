"""Covering radius rho(P, L) of a plane polygon with respect to a 2-D lattice.

rho is found by bisection on r, deciding at each step whether the translates
rP + m (m in L) cover the plane.  Everything is done in lattice coefficient
coordinates, where L becomes Z^2 and the fundamental cell is [0, 1]^2.  Only
translates whose coefficient box meets the cell can touch it, which gives a
finite, certified neighbour set.

Two coverage tests are provided:

* an exact one (Fractions): clip each translate to the cell and compare the
  area of the union with 1;
* a floating one: a gap in the union is an open set bounded by pieces of
  translate edges, so it suffices to probe a point just outside every edge
  piece between consecutive crossings.  An area comparison in doubles cannot
  see gaps of area below ~1e-16, which near the deep hole means r errors of
  ~1e-8; the probe test resolves r to the probe offset.

For integer lattices and rational bodies the bracket returned by the floating
bisection is certified with the exact test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import ValidationError
from .lattice import IntegerLattice, RealLattice, gauss_reduce, lll_reduce_int
from .polygons import Polytope2, clip_to_box, polygon_area, union_area

DEFAULT_TOL = 1e-9
SNAP = 1e-12
_PROBE = 1e-10


@dataclass(frozen=True)
class CoveringResult:
    radius: float
    lo: float
    hi: float
    certified: bool


def _coeff_vertices(basis: np.ndarray, verts) -> np.ndarray:
    """Body vertices in coefficient coordinates, counter-clockwise."""
    v = np.asarray(verts, dtype=float) @ np.linalg.inv(basis)
    if polygon_area([tuple(p) for p in v]) < 0:
        v = v[::-1]
    return v


def _neighbours(cv: np.ndarray, r) -> np.ndarray:
    """Integer translates m with (r * body + m) meeting [0, 1]^2."""
    lo = cv.min(axis=0) * r
    hi = cv.max(axis=0) * r
    i = np.arange(math.ceil(-hi[0] - SNAP), math.floor(1 - lo[0] + SNAP) + 1)
    j = np.arange(math.ceil(-hi[1] - SNAP), math.floor(1 - lo[1] + SNAP) + 1)
    ii, jj = np.meshgrid(i, j, indexing="ij")
    return np.stack([ii.ravel(), jj.ravel()], axis=1).astype(float)


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


_CELL_SIDES = (
    np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]),
    np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]),
)


def _clip_to_cell(start: np.ndarray, step: np.ndarray, margin: float):
    """Liang-Barsky: parameter range [t0, t1] of each segment inside the widened cell."""
    t0 = np.zeros(len(start))
    t1 = np.ones(len(start))
    for d in range(2):
        p, q = step[:, d], start[:, d]
        with np.errstate(divide="ignore", invalid="ignore"):
            ta = (-margin - q) / p
            tb = (1 + margin - q) / p
        lo = np.where(p > 0, ta, tb)
        hi = np.where(p > 0, tb, ta)
        flat = p == 0
        outside = flat & ((q < -margin) | (q > 1 + margin))
        lo = np.where(flat, 0.0, lo)
        hi = np.where(flat, 1.0, hi)
        t0 = np.maximum(t0, lo)
        t1 = np.minimum(np.where(outside, -1.0, t1), hi)
    return t0, t1


# translates tried when discarding edges buried inside a neighbour
_BURY = np.array([(i, j) for i in range(-3, 4) for j in (-1, 0, 1) if (i, j) != (0, 0)], dtype=float)


def covers_float(cv: np.ndarray, r: float) -> bool:
    """Do the translates r*cv + Z^2 cover the plane?  (probe test, floats)"""
    ms = _neighbours(cv, r)
    poly = r * cv
    nv = len(cv)
    start = (poly[None, :, :] + ms[:, None, :]).reshape(-1, 2)
    step = np.tile(np.roll(poly, -1, axis=0) - poly, (len(ms), 1))
    owner = np.repeat(np.arange(len(ms)), nv)

    # half-plane description of the body: n_f . x <= r * h_f
    edge = np.roll(cv, -1, axis=0) - cv
    nf = np.stack([edge[:, 1], -edge[:, 0]], axis=1)
    nf /= np.hypot(nf[:, 0], nf[:, 1])[:, None]
    hf = np.einsum("ij,ij->i", nf, cv)

    # keep only the part of each edge near the cell, and drop edges lying
    # strictly inside a nearby translate: they cannot bound a gap
    t0, t1 = _clip_to_cell(start, step, 1e-9)
    keep = t1 - t0 > SNAP
    start, step, owner, t0, t1 = start[keep], step[keep], owner[keep], t0[keep], t1[keep]
    if len(start):
        ends = np.stack([start + t0[:, None] * step, start + t1[:, None] * step], axis=1)  # E x 2 x 2
        cand = ms[owner][:, None, :] + _BURY[None, :, :]  # E x C x 2
        rel = ends[:, None, :, :] - cand[:, :, None, :]  # E x C x 2 x 2
        slack = np.einsum("ecpd,fd->ecpf", rel, nf) - r * hf
        buried = np.any(np.all(slack < -1e-9, axis=(2, 3)), axis=1)
        keep = ~buried
        start, step, t0, t1 = start[keep], step[keep], t0[keep], t1[keep]
    if not len(start):
        return _probe_cover(np.array([[0.5, 0.5]]), ms, nf, hf, r)
    seg_len = np.hypot(step[:, 0], step[:, 1])
    normal = np.stack([step[:, 1], -step[:, 0]], axis=1) / seg_len[:, None]

    # every edge is cut at crossings with the surviving edges and the cell sides
    cut_p = np.concatenate([start, _CELL_SIDES[0]])
    cut_q = np.concatenate([step, _CELL_SIDES[1]])
    dpx = cut_p[None, :, 0] - start[:, None, 0]
    dpy = cut_p[None, :, 1] - start[:, None, 1]
    den = _cross(step[:, None, 0], step[:, None, 1], cut_q[None, :, 0], cut_q[None, :, 1])
    with np.errstate(divide="ignore", invalid="ignore"):
        t = _cross(dpx, dpy, cut_q[None, :, 0], cut_q[None, :, 1]) / den
        u = _cross(dpx, dpy, step[:, None, 0], step[:, None, 1]) / den
    valid = (np.abs(den) > 1e-14) & (t > t0[:, None]) & (t < t1[:, None]) & (u >= -SNAP) & (u <= 1 + SNAP)
    t = np.where(valid, t, np.nan)
    t = np.concatenate([t0[:, None], t, t1[:, None]], axis=1)
    t.sort(axis=1)  # NaNs sort last
    a, b = t[:, :-1], t[:, 1:]
    gap = (b - a) > SNAP
    ei, ci = np.nonzero(gap)
    tm = 0.5 * (a[ei, ci] + b[ei, ci])
    base = start[ei] + tm[:, None] * step[ei]
    inside_cell = np.all((base >= -SNAP) & (base <= 1 + SNAP), axis=1)
    probe = base[inside_cell] + _PROBE * normal[ei[inside_cell]]
    if not len(probe):
        return True
    return _probe_cover(probe, ms, nf, hf, r)


def _probe_cover(probe: np.ndarray, ms: np.ndarray, nf: np.ndarray, hf: np.ndarray, r: float, chunk: int = 4096) -> bool:
    probe = probe - np.floor(probe)
    for i in range(0, len(probe), chunk):
        rel = probe[i : i + chunk, None, :] - ms[None, :, :]  # probes x translates x 2
        slack = np.einsum("pmd,fd->pmf", rel, nf) - r * hf[None, None, :]
        if not np.all(np.any(np.max(slack, axis=2) <= 1e-13, axis=1)):
            return False
    return True


def covers_exact(cv_exact, r: Fraction) -> bool:
    """Exact coverage test: area of the union of clipped translates equals 1."""
    cvf = np.array([[float(x) for x in p] for p in cv_exact])
    ms = _neighbours(cvf, float(r))
    # widen the float neighbour box by one to be safe against rounding
    i_lo, j_lo = ms.min(axis=0) - 1
    i_hi, j_hi = ms.max(axis=0) + 1
    pieces = []
    for i in range(int(i_lo), int(i_hi) + 1):
        for j in range(int(j_lo), int(j_hi) + 1):
            poly = [(r * x + i, r * y + j) for x, y in cv_exact]
            clipped = clip_to_box(poly, Fraction(0), Fraction(0), Fraction(1), Fraction(1))
            if len(clipped) >= 3:
                pieces.append(clipped)
    return union_area(pieces) == 1


def _reduced_basis(L):
    if isinstance(L, IntegerLattice):
        return np.array(lll_reduce_int(L.basis.tolist()), dtype=np.int64)
    if isinstance(L, RealLattice):
        return np.array(gauss_reduce([[float(x) for x in row] for row in L.basis]), dtype=float)
    raise ValidationError(f"not a lattice: {L!r}")


def _exact_coeff_vertices(ibasis: np.ndarray, verts_exact):
    (a, b), (c, d) = [[int(x) for x in row] for row in ibasis]
    det = a * d - b * c
    inv = [[Fraction(d, det), Fraction(-b, det)], [Fraction(-c, det), Fraction(a, det)]]
    out = [(x * inv[0][0] + y * inv[1][0], x * inv[0][1] + y * inv[1][1]) for x, y in verts_exact]
    if polygon_area(out) < 0:
        out = out[::-1]
    return out


def covering_radius_2d_result(L, P: Polytope2, tol: float = DEFAULT_TOL, exact: bool | None = None) -> CoveringResult:
    if L.k != 2:
        raise ValidationError(f"covering_radius_2d needs k = 2, got k = {L.k}")
    if not (tol > 0):
        raise ValidationError(f"tol must be positive, got {tol}")
    if not isinstance(P, Polytope2):
        P = Polytope2(P)
    basis = _reduced_basis(L)
    fbasis = basis.astype(float)
    cv = _coeff_vertices(fbasis, P.vertices())
    covol = abs(float(np.linalg.det(fbasis)))
    lo = math.sqrt(covol / float(P.area()))  # density argument: rho >= this
    hi = 2 * lo
    while not covers_float(cv, hi):
        lo, hi = hi, 2 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if covers_float(cv, mid):
            hi = mid
        else:
            lo = mid
    if exact is None:
        exact = isinstance(L, IntegerLattice)
    if not exact:
        return CoveringResult(radius=0.5 * (lo + hi), lo=lo, hi=hi, certified=False)
    return _certify(basis, P, lo, hi, tol)


def _certify(ibasis, P: Polytope2, lo: float, hi: float, tol: float) -> CoveringResult:
    """Confirm (or repair) a float bracket with the exact test."""
    cvx = _exact_coeff_vertices(ibasis, P.vertices(exact=True))
    mid = Fraction(0.5 * (lo + hi))
    eps = Fraction(1, 2**34)
    # the float bracket can be off by a few ulps of the probe geometry; the
    # exact tests below decide, the gate only skips hopeless candidates
    gate = max(Fraction(tol), Fraction(1e-7) * mid)
    for cap in (10**3, 10**6):
        q = mid.limit_denominator(cap)
        if abs(q - mid) <= gate and covers_exact(cvx, q) and not covers_exact(cvx, q - eps):
            return CoveringResult(radius=float(q), lo=float(q - eps), hi=float(q), certified=True)
    flo, fhi = Fraction(lo), Fraction(hi)
    step = Fraction(tol)
    while covers_exact(cvx, flo) and flo > 0:
        flo -= step
        step *= 2
    step = Fraction(tol)
    while not covers_exact(cvx, fhi):
        fhi += step
        step *= 2
    while fhi - flo > Fraction(tol):
        m = (flo + fhi) / 2
        if covers_exact(cvx, m):
            fhi = m
        else:
            flo = m
    return CoveringResult(radius=float((flo + fhi) / 2), lo=float(flo), hi=float(fhi), certified=True)


def covering_radius_2d(L, P: Polytope2, tol: float = DEFAULT_TOL, exact: bool | None = None) -> float:
    """rho(P, L) = inf{r > 0 : rP + L = R^2} for a 2-D lattice.

    ``exact`` defaults to True for integer lattices, in which case the final
    bracket is certified in rational arithmetic.
    """
    return covering_radius_2d_result(L, P, tol, exact).radius


def rescaled_covering_radius(lat: IntegerLattice, n: int, lengths, shape: str = "simplex", tol: float = DEFAULT_TOL, exact: bool | None = None) -> float:
    """rho(P, L_{n,a,l}) via rho(P, Lambda D_n(l)) = Pi^{-1/2} rho(P_l, Lambda).

    ``shape`` is "simplex" (P = Delta, reduced to Delta_l) or "cross"
    (P = cross-polytope, reduced to Q_l).
    """
    lengths = tuple(lengths)
    if len(lengths) != 2:
        raise ValidationError("rescaled_covering_radius is two-dimensional")
    tag = {"simplex": "wsimplex", "cross": "wcross"}[Polytope2(shape).tag]
    big_pi = n * lengths[0] * lengths[1]
    rho = covering_radius_2d(lat, Polytope2(tag, lengths), tol=tol, exact=exact)
    return rho / math.sqrt(big_pi)
