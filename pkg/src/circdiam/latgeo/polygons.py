"""Convex polygons in the plane: the five body shapes, clipping and union area.

Every routine here is written over generic field elements so that the same
code runs on floats and on ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ValidationError

SHAPES = ("simplex", "cross", "square", "wsimplex", "wcross")

_ALIASES = {
    "delta": "simplex",
    "simplex": "simplex",
    "p": "cross",
    "cross": "cross",
    "crosspolytope": "cross",
    "k": "square",
    "square": "square",
    "wsimplex": "wsimplex",
    "weighted-simplex": "wsimplex",
    "wcross": "wcross",
    "weighted-crosspolytope": "wcross",
}


def _rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Polytope2:
    """One of the plane bodies Delta, P (cross-polytope), K = [0,1]^2, Delta_l, Q_l."""

    tag: str
    weights: tuple | None = None

    def __post_init__(self):
        tag = _ALIASES.get(str(self.tag).lower())
        if tag is None:
            raise ValidationError(f"unknown polytope {self.tag!r}; expected one of {SHAPES}")
        object.__setattr__(self, "tag", tag)
        if tag in ("wsimplex", "wcross"):
            if self.weights is None or len(self.weights) != 2:
                raise ValidationError(f"{tag} needs two weights")
            if any(not (w > 0) for w in self.weights):
                raise ValidationError(f"weights must be positive: {self.weights}")
            object.__setattr__(self, "weights", tuple(self.weights))
        elif self.weights is not None:
            raise ValidationError(f"{tag} takes no weights")

    def vertices(self, exact: bool = False) -> list[tuple]:
        """Counter-clockwise vertex list (Fractions when ``exact``)."""
        one = Fraction(1) if exact else 1.0
        zero = one * 0
        if self.tag == "simplex":
            return [(zero, zero), (one, zero), (zero, one)]
        if self.tag == "cross":
            return [(one, zero), (zero, one), (-one, zero), (zero, -one)]
        if self.tag == "square":
            return [(zero, zero), (one, zero), (one, one), (zero, one)]
        w1, w2 = self.weights
        if exact:
            u1, u2 = 1 / _rational(w1), 1 / _rational(w2)
        else:
            u1, u2 = 1.0 / float(w1), 1.0 / float(w2)
        if self.tag == "wsimplex":
            return [(zero, zero), (u1, zero), (zero, u2)]
        return [(u1, zero), (zero, u2), (-u1, zero), (zero, -u2)]

    def area(self, exact: bool = False):
        return abs(polygon_area(self.vertices(exact)))


def simplex() -> Polytope2:
    return Polytope2("simplex")


def crosspolytope() -> Polytope2:
    return Polytope2("cross")


def unit_square() -> Polytope2:
    return Polytope2("square")


def weighted_simplex(lengths) -> Polytope2:
    return Polytope2("wsimplex", tuple(lengths))


def weighted_crosspolytope(lengths) -> Polytope2:
    return Polytope2("wcross", tuple(lengths))


def polygon_area(pts) -> object:
    """Signed shoelace area."""
    s = 0 * pts[0][0]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        s += x0 * y1 - x1 * y0
    return s / 2


def clip_halfplane(poly, nx, ny, c):
    """Sutherland-Hodgman step: keep the part of ``poly`` with nx*x + ny*y <= c."""
    out = []
    if not poly:
        return out
    prev = poly[-1]
    pv = nx * prev[0] + ny * prev[1] - c
    for cur in poly:
        cv = nx * cur[0] + ny * cur[1] - c
        if cv <= 0:
            if pv > 0:
                t = pv / (pv - cv)
                out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
            out.append(cur)
        elif pv <= 0:
            t = pv / (pv - cv)
            out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
        prev, pv = cur, cv
    return _dedupe(out)


def _dedupe(poly):
    out = []
    for p in poly:
        if not out or p != out[-1]:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def clip_to_box(poly, x0, y0, x1, y1):
    for nx, ny, c in ((-1, 0, -x0), (1, 0, x1), (0, -1, -y0), (0, 1, y1)):
        poly = clip_halfplane(poly, nx, ny, c)
        if len(poly) < 3:
            return []
    return poly


def _edges(poly):
    return list(zip(poly, poly[1:] + poly[:1]))


def _segment_cross_x(p, q, r, s):
    """x-coordinate where segments pq and rs cross (None if they do not)."""
    dx1, dy1 = q[0] - p[0], q[1] - p[1]
    dx2, dy2 = s[0] - r[0], s[1] - r[1]
    den = dx1 * dy2 - dy1 * dx2
    if den == 0:
        return None
    t = ((r[0] - p[0]) * dy2 - (r[1] - p[1]) * dx2) / den
    u = ((r[0] - p[0]) * dy1 - (r[1] - p[1]) * dx1) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return p[0] + t * dx1
    return None


def _vertical_extent(poly, x):
    """(lo, hi) of the convex polygon on the vertical line at x, or None."""
    ys = []
    for p, q in _edges(poly):
        xa, xb = (p[0], q[0]) if p[0] <= q[0] else (q[0], p[0])
        if xa == xb or x < xa or x > xb:
            continue
        t = (x - p[0]) / (q[0] - p[0])
        ys.append(p[1] + t * (q[1] - p[1]))
    if not ys:
        return None
    return min(ys), max(ys)


def union_area(polys) -> object:
    """Area of a union of convex polygons by vertical slab decomposition.

    Inside a slab between consecutive event abscissae (vertices and pairwise
    edge crossings) no two boundaries cross, so the measure of the union of
    the vertical sections is affine in x and the midpoint rule is exact.
    """
    polys = [p for p in polys if len(p) >= 3]
    if not polys:
        return 0
    xs = {v[0] for p in polys for v in p}
    edges = [e for p in polys for e in _edges(p)]
    boxes = [(min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1])) for p, q in edges]
    for i in range(len(edges)):
        bi = boxes[i]
        for j in range(i + 1, len(edges)):
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            x = _segment_cross_x(*edges[i], *edges[j])
            if x is not None:
                xs.add(x)
    xs = sorted(xs)
    xranges = [(min(v[0] for v in p), max(v[0] for v in p)) for p in polys]
    total = 0 * xs[0]
    for xa, xb in zip(xs, xs[1:]):
        if xb <= xa:
            continue
        xm = (xa + xb) / 2
        spans = []
        for poly, (lo, hi) in zip(polys, xranges):
            if lo <= xm <= hi:
                ext = _vertical_extent(poly, xm)
                if ext is not None:
                    spans.append(ext)
        if not spans:
            continue
        spans.sort()
        length = 0 * xm
        cur_lo, cur_hi = spans[0]
        for lo, hi in spans[1:]:
            if lo > cur_hi:
                length += cur_hi - cur_lo
                cur_lo, cur_hi = lo, hi
            elif hi > cur_hi:
                cur_hi = hi
        length += cur_hi - cur_lo
        total += (xb - xa) * length
    return total
