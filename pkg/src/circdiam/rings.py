"""Weighted circulant graphs C_n(l, a) and digraphs C_n^+(l, a).

Vertices are 0..n-1; vertex i is joined to i + a_h (mod n) by an edge of
length l_h (in both directions for the undirected graph).  Every invariant
here is computed from the single-source profile dist[j] = d(0, j), which
suffices because the graphs are vertex transitive.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DisconnectedError, ValidationError

_INT64_MAX = np.iinfo(np.int64).max


@dataclass(frozen=True)
class CirculantSpec:
    n: int
    a: tuple[int, ...]
    lengths: tuple[float, ...]
    directed: bool

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def integral(self) -> bool:
        """True when every edge length is an integer (exact arithmetic path)."""
        return all(float(x).is_integer() for x in self.lengths)

    @property
    def length_sum(self) -> float:
        return float(sum(self.lengths))

    @property
    def volume(self) -> float:
        """Pi = n * l_1 * ... * l_k, the scale of the rescaled lattice."""
        return self.n * math.prod(self.lengths)

    def moves(self) -> list[tuple[int, float]]:
        """Generator steps (offset mod n, length), deduplicated.

        For an undirected spec with a_k = n/2 the two steps +a_k and -a_k land
        on the same vertex, so a single edge is kept.
        """
        steps: dict[int, float] = {}
        for ah, lh in zip(self.a, self.lengths):
            offsets = [ah % self.n] if self.directed else [ah % self.n, (-ah) % self.n]
            for off in offsets:
                if off in steps:
                    steps[off] = min(steps[off], lh)
                else:
                    steps[off] = lh
        return sorted(steps.items())


@dataclass(frozen=True)
class DistanceProfile:
    spec: CirculantSpec
    dist: np.ndarray

    @property
    def connected(self) -> bool:
        return bool(np.all(np.isfinite(self.dist.astype(float))))

    def __getitem__(self, j: int):
        return self.dist[j % self.spec.n]

    def distance(self, i: int, j: int):
        """d(i, j) by vertex transitivity."""
        return self.dist[(j - i) % self.spec.n]


def build_circulant(n, a, lengths=None, directed=False) -> CirculantSpec:
    """Validate and build a circulant (di)graph spec.

    ``lengths`` defaults to all ones.  Integral lengths are stored as ints so
    that downstream distances stay exact.
    """
    a = tuple(int(x) for x in a)
    if lengths is None:
        lengths = (1,) * len(a)
    lengths = tuple(lengths)
    n = int(n)
    if n < 2:
        raise ValidationError(f"n must be >= 2, got {n}")
    if len(a) < 1:
        raise ValidationError("need at least one generator")
    if len(a) != len(lengths):
        raise ValidationError(f"len(a)={len(a)} != len(lengths)={len(lengths)}")
    if any(x <= 0 for x in a):
        raise ValidationError(f"generators must be positive: {a}")
    if any(x >= y for x, y in zip(a, a[1:])):
        raise ValidationError(f"generators must be strictly increasing: {a}")
    if directed and a[-1] >= n:
        raise ValidationError(f"directed generators must be < n={n}: {a}")
    if not directed and 2 * a[-1] > n:
        raise ValidationError(f"undirected generators must be <= n/2={n / 2}: {a}")
    clean = []
    for x in lengths:
        if not (x > 0) or not math.isfinite(x):
            raise ValidationError(f"edge lengths must be positive and finite: {lengths}")
        clean.append(int(x) if float(x).is_integer() else float(x))
    return CirculantSpec(n=n, a=a, lengths=tuple(clean), directed=bool(directed))


def is_connected(spec: CirculantSpec) -> bool:
    return reduce(math.gcd, spec.a, spec.n) == 1


def _bfs(n: int, offsets: np.ndarray, source: int) -> np.ndarray:
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nxt = ((frontier[:, None] + offsets[None, :]) % n).ravel()
        nxt = np.unique(nxt[dist[nxt] < 0])
        dist[nxt] = level
        frontier = nxt
    return dist


def _dijkstra(n: int, moves: list[tuple[int, float]], source: int, integral: bool) -> list:
    inf = math.inf
    dist = [inf] * n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for off, w in moves:
            u = v + off
            if u >= n:
                u -= n
            nd = d + w
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    if integral:
        finite = [x for x in dist if x != inf]
        if finite and max(finite) > _INT64_MAX:
            raise OverflowError("integer distance exceeds 64-bit range")
    return dist


def distances_from(spec: CirculantSpec, source: int = 0) -> np.ndarray:
    """Single-source shortest path lengths d(source, j) for all j.

    Integral lengths give an int64 array, otherwise float64.  If some vertex
    is unreachable the result is float64 with +inf entries.
    """
    n = spec.n
    moves = spec.moves()
    if all(w == 1 for _, w in moves):
        offsets = np.array([off for off, _ in moves], dtype=np.int64)
        dist = _bfs(n, offsets, source % n)
        if np.any(dist < 0):
            out = dist.astype(float)
            out[dist < 0] = np.inf
            return out
        return dist
    raw = _dijkstra(n, moves, source % n, spec.integral)
    if spec.integral and all(x != math.inf for x in raw):
        return np.array(raw, dtype=np.int64)
    return np.array(raw, dtype=float)


def distance_profile(spec: CirculantSpec) -> DistanceProfile:
    return DistanceProfile(spec=spec, dist=distances_from(spec, 0))


def _require_connected(profile: DistanceProfile) -> None:
    if not profile.connected:
        s = profile.spec
        raise DisconnectedError(f"C_{s.n}{'+' if s.directed else ''}{s.a} is not connected")


def _as_profile(obj) -> DistanceProfile:
    return obj if isinstance(obj, DistanceProfile) else distance_profile(obj)


def diameter(spec_or_profile):
    """max_j d(0, j); an int for integral lengths."""
    profile = _as_profile(spec_or_profile)
    _require_connected(profile)
    m = profile.dist.max()
    return int(m) if profile.dist.dtype.kind == "i" else float(m)


def moment(profile, alpha: int) -> float:
    """M_alpha = (1/n) sum_j dist[j]**alpha."""
    profile = _as_profile(profile)
    alpha = int(alpha)
    if alpha < 1:
        raise ValidationError(f"alpha must be a positive integer, got {alpha}")
    _require_connected(profile)
    if profile.dist.dtype.kind == "i":
        # exact integer power sum, divided once
        total = sum(int(x) ** alpha for x in profile.dist.tolist())
        return total / profile.spec.n
    return float(np.mean(profile.dist.astype(float) ** alpha))


def scl_directed(spec_or_profile):
    """Length of the shortest directed cycle of C_n^+(l, a).

    Every cycle through 0 ends with some step a_h from vertex -a_h, so the
    answer is min_h (l_h + d(0, -a_h)).
    """
    profile = _as_profile(spec_or_profile)
    spec = profile.spec
    if not spec.directed:
        raise ValueError("scl_directed needs a directed spec")
    _require_connected(profile)
    best = min(lh + profile.dist[(spec.n - ah) % spec.n] for ah, lh in zip(spec.a, spec.lengths))
    return int(best) if profile.dist.dtype.kind == "i" and spec.integral else float(best)
