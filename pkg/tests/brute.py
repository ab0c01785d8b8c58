"""Independent brute-force oracles used as test references.

Nothing here imports the package: each function recomputes its quantity
from the definition with plain loops.
"""

import itertools
import math
from functools import reduce


def graph_distances(n, a, lengths, directed, source=0):
    """Bellman-Ford style relaxation over the explicit edge list."""
    edges = []
    for ah, lh in zip(a, lengths):
        for v in range(n):
            edges.append((v, (v + ah) % n, lh))
            if not directed:
                edges.append(((v + ah) % n, v, lh))
    dist = [math.inf] * n
    dist[source] = 0
    changed = True
    while changed:
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
    return dist


def kernel_vectors(a, n, box):
    """All m in [-box, box]^k with m . a = 0 mod n."""
    k = len(a)
    for m in itertools.product(range(-box, box + 1), repeat=k):
        if sum(x * y for x, y in zip(m, a)) % n == 0:
            yield m


def shortest_l1(a, n, lengths, box=None):
    box = n if box is None else box
    return min(
        sum(abs(x) * w for x, w in zip(m, lengths)) for m in kernel_vectors(a, n, box) if any(m)
    )


def shortest_nonneg(a, n, lengths):
    best = math.inf
    for m in itertools.product(range(n + 1), repeat=len(a)):
        if any(m) and sum(x * y for x, y in zip(m, a)) % n == 0:
            best = min(best, sum(x * w for x, w in zip(m, lengths)))
    return best


def lattice_profile(a, n, lengths, directed):
    """dist[j] = min weight of a coefficient vector reaching residue j."""
    k = len(a)
    best = [math.inf] * n
    rng = range(0, n) if directed else range(-n // 2 - 1, n // 2 + 2)
    for m in itertools.product(rng, repeat=k):
        j = sum(x * y for x, y in zip(m, a)) % n
        w = sum(abs(x) * l for x, l in zip(m, lengths))
        if w < best[j]:
            best[j] = w
    return best


def representable_table(gens, limit):
    ok = [False] * (limit + 1)
    ok[0] = True
    for v in range(1, limit + 1):
        ok[v] = any(v >= g and ok[v - g] for g in gens)
    return ok


def frobenius(gens):
    gens = sorted(gens)
    assert reduce(math.gcd, gens) == 1
    if gens[0] == 1:
        return -1
    # Schur: F <= (g_1 - 1)(g_max - 1) - 1
    limit = gens[0] * gens[-1]
    ok = representable_table(gens, limit)
    return max(v for v in range(limit + 1) if not ok[v])


def count_tuples_fplus(T, k=2, half=False):
    top = int(math.floor(T))
    total = 0
    for n in range(1, top + 1):
        for a in itertools.combinations(range(1, n), k):
            if half and 2 * a[-1] > n:
                continue
            if reduce(math.gcd, a, n) == 1:
                total += 1
    return total


def frobenius_bitset(gens):
    """Same as frobenius, with the representable set held as a Python int bitmask."""
    gens = sorted(gens)
    assert reduce(math.gcd, gens) == 1
    if gens[0] == 1:
        return -1
    limit = gens[0] * gens[-1]
    mask = (1 << (limit + 1)) - 1
    s = 1
    for g in gens:
        # close under adding any multiple of g
        step = g
        while step <= limit:
            s = (s | (s << step)) & mask
            step *= 2
    missing = ~s & mask
    return missing.bit_length() - 1
