import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brute import shortest_l1, shortest_nonneg as brute_nonneg
from circdiam import BudgetExceeded, ValidationError
from circdiam.latgeo import (
    IntegerLattice,
    Polytope2,
    RealLattice,
    covering_radius_2d,
    covering_radius_2d_result,
    crosspolytope,
    delta,
    kappa,
    kappa_lattice,
    kernel_lattice,
    omega_lattice,
    psi_directed,
    psi_undirected,
    rescale,
    rescaled_covering_radius,
    shortest_nonneg,
    shortest_weighted_l1,
    simplex,
    torus_moment_mc,
    unit_square,
)
from circdiam.latgeo.lattice import gauss_reduce, int_det, lll_reduce_float, lll_reduce_int
from circdiam.latgeo.oracles import sample_kappa_region, sample_omega
from circdiam.latgeo.polygons import clip_halfplane, clip_to_box, polygon_area, union_area
from circdiam.rings import build_circulant, diameter, distances_from, scl_directed

Z2 = RealLattice.from_basis(np.eye(2))


@st.composite
def tuples2(draw, max_n=200):
    n = draw(st.integers(4, max_n))
    a1 = draw(st.integers(1, n - 2))
    a2 = draw(st.integers(a1 + 1, n - 1))
    if math.gcd(math.gcd(a1, a2), n) != 1:
        a1 = 1
        a2 = max(a2, 2)
    return (a1, a2), n


# -- kernel lattice and rescaling -------------------------------------------


def test_kernel_example_2_3_8():
    lat = kernel_lattice((2, 3), 8)
    assert lat.det_abs == 8 and abs(int_det(lat.basis.tolist())) == 8
    for m in lat.basis:
        assert (2 * m[0] + 3 * m[1]) % 8 == 0
    # same lattice as span{(1,2),(4,0)}
    ref = IntegerLattice(np.array([[1, 2], [4, 0]]), 8)
    assert all(ref.contains(m) for m in lat.basis)
    assert all(lat.contains(m) for m in ref.basis)


def test_kernel_small_examples():
    lat = kernel_lattice((1,), 5)
    assert lat.det_abs == 5 and abs(int(lat.basis[0, 0])) == 5
    lat = kernel_lattice((1, 1), 2)
    assert lat.det_abs == 2 and lat.contains((1, 1)) and not lat.contains((1, 0))


@pytest.mark.parametrize("a,n", [((2, 4), 8), ((0, 1), 5), ((1, 5), 5), ((), 3)])
def test_kernel_rejects(a, n):
    with pytest.raises(ValidationError):
        kernel_lattice(a, n)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(lambda k: st.tuples(st.just(k), st.integers(k + 1, 60))), st.data())
def test_kernel_is_index_n_sublattice(kn, data):
    k, n = kn
    a = sorted(data.draw(st.sets(st.integers(1, n - 1), min_size=k, max_size=k)))
    if math.gcd(*a, n) != 1:
        return
    lat = kernel_lattice(a, n)
    assert lat.det_abs == n
    assert all(int(np.dot(m, a)) % n == 0 for m in lat.basis)
    # membership agrees with the congruence on a small box
    for m in itertools.product(range(-2, 3), repeat=k):
        assert lat.contains(m) == (sum(x * y for x, y in zip(m, a)) % n == 0)


def test_rescale_examples():
    lat = kernel_lattice((2, 3), 8)
    L = rescale(lat, 8, (1, 1))
    assert abs(L.covolume - 1) < 1e-12
    L2 = rescale(lat, 8, (2, 1))
    np.testing.assert_allclose(L2.basis, lat.basis * np.array([0.5, 0.25]))
    assert abs(abs(np.linalg.det(L2.basis)) - 1) < 1e-12
    L1 = rescale(kernel_lattice((1,), 5), 5, (1,))
    assert abs(abs(L1.basis[0, 0]) - 1) < 1e-12
    with pytest.raises(ValidationError):
        rescale(lat, 9, (1, 1))
    with pytest.raises(ValidationError):
        rescale(lat, 8, (1, -1))


def test_lattice_types_validate():
    with pytest.raises(ValidationError):
        IntegerLattice(np.array([[1, 2], [2, 4]]), 0)
    with pytest.raises(ValidationError):
        IntegerLattice(np.array([[1, 0], [0, 2]]), 3)
    with pytest.raises(ValidationError):
        RealLattice(np.eye(2), 2.0)


def test_reduction_preserves_lattice():
    rng = np.random.default_rng(1)
    for _ in range(50):
        k = int(rng.integers(2, 5))
        b = rng.integers(-20, 21, size=(k, k))
        if int_det(b.tolist()) == 0:
            continue
        red = lll_reduce_int(b.tolist())
        assert abs(int_det(red)) == abs(int_det(b.tolist()))
        lat = IntegerLattice(b, abs(int_det(b.tolist())))
        assert all(lat.contains(row) for row in red)
        fr = lll_reduce_float(b.astype(float))
        assert abs(abs(np.linalg.det(fr)) - abs(np.linalg.det(b))) < 1e-6 * abs(np.linalg.det(b))
    u, v = gauss_reduce([[1, 0], [1000, 1]])
    assert sorted([u, v]) == sorted([[1, 0], [0, 1]])


# -- shortest vectors ---------------------------------------------------------


def test_shortest_l1_examples():
    vec, val = shortest_weighted_l1(kernel_lattice((2, 3), 10), (1, 1))
    assert val == shortest_l1((2, 3), 10, (1, 1)) == 4
    assert (2 * vec[0] + 3 * vec[1]) % 10 == 0 and abs(vec[0]) + abs(vec[1]) == 4
    assert shortest_weighted_l1(Z2, (2.0, 3.0))[1] == 2.0
    assert shortest_weighted_l1(kernel_lattice((1, 1), 2), (1, 1))[1] == 2


@settings(max_examples=100, deadline=None)
@given(tuples2(max_n=40), st.lists(st.integers(1, 4), min_size=2, max_size=2))
def test_shortest_l1_brute(tup, lengths):
    a, n = tup
    vec, val = shortest_weighted_l1(kernel_lattice(a, n), lengths)
    assert val == shortest_l1(a, n, lengths)
    assert any(vec) and sum(x * y for x, y in zip(vec, a)) % n == 0


def test_shortest_nonneg_examples():
    assert shortest_nonneg(kernel_lattice((2, 3), 8), (1, 1)) == 3
    assert shortest_nonneg(kernel_lattice((1,), 7), (1,)) == 7
    assert shortest_nonneg(Z2, (1, 1)) == 1


@settings(max_examples=60, deadline=None)
@given(tuples2(max_n=30), st.lists(st.integers(1, 3), min_size=2, max_size=2))
def test_shortest_nonneg_brute(tup, lengths):
    a, n = tup
    assert shortest_nonneg(kernel_lattice(a, n), lengths) == brute_nonneg(a, n, lengths)


def test_shortest_nonneg_equals_scl():
    rng = np.random.default_rng(7)
    done = 0
    while done < 500:
        n = int(rng.integers(4, 400))
        a = sorted(rng.choice(np.arange(1, n), size=2, replace=False).tolist())
        if math.gcd(*a, n) != 1:
            continue
        lengths = tuple(int(x) for x in rng.integers(1, 5, size=2))
        spec = build_circulant(n, a, lengths, directed=True)
        assert shortest_nonneg(kernel_lattice(a, n), lengths) == scl_directed(spec)
        done += 1


# -- torus distance functions ---------------------------------------------------


def test_psi_examples():
    assert psi_directed(Z2, (0.3, 0.4)) == pytest.approx(0.7)
    assert psi_directed(Z2, (-0.3, 0.4)) == pytest.approx(1.1)
    assert psi_undirected(Z2, (0.5, 0.5)) == pytest.approx(1.0)
    assert psi_undirected(Z2, (0.2, 0.0)) == pytest.approx(0.2)
    L = rescale(kernel_lattice((2, 3), 8), 8, (1, 1))
    assert psi_directed(L, (0.0, 0.0)) == pytest.approx(0.0, abs=1e-12)
    assert psi_undirected(L, L.basis[0] - 2 * L.basis[1]) == pytest.approx(0.0, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(tuples2(max_n=150), st.floats(-3, 3), st.floats(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_psi_lattice_periodic(tup, y1, y2, c1, c2):
    a, n = tup
    L = rescale(kernel_lattice(a, n), n, (1, 1))
    y = np.array([y1, y2])
    shift = c1 * L.basis[0] + c2 * L.basis[1]
    assert psi_directed(L, y) == pytest.approx(psi_directed(L, y + shift), abs=1e-9)
    assert psi_undirected(L, y) == pytest.approx(psi_undirected(L, y + shift), abs=1e-9)
    assert psi_undirected(L, y) <= psi_directed(L, y) + 1e-9


@settings(max_examples=40, deadline=None)
@given(tuples2(max_n=60))
def test_psi_matches_graph_distances(tup):
    # at lattice-coset points Psi reduces to graph distances of C_n^+ (scaled)
    a, n = tup
    lat = kernel_lattice(a, n)
    L = rescale(lat, n, (1, 1))
    prof = [int(x) for x in distances_from(build_circulant(n, a, directed=True))]
    s = n**-0.5
    for j in range(0, n, max(1, n // 7)):
        # any coefficient vector m with m . a = j represents vertex j
        m = next(m for m in itertools.product(range(n), repeat=2) if (m[0] * a[0] + m[1] * a[1]) % n == j)
        assert psi_directed(L, s * np.array(m, dtype=float)) == pytest.approx(s * prof[j], abs=1e-9)


def test_torus_moment_examples():
    est, err = torus_moment_mc(Z2, 1, directed=False, samples=20000, seed=3, return_stderr=True)
    assert abs(est - 0.5) < 3 * err
    est, err = torus_moment_mc(Z2, 1, directed=True, samples=20000, seed=3, return_stderr=True)
    assert abs(est - 1.0) < 3 * err
    assert torus_moment_mc(Z2, 2, True, 500, 9) == torus_moment_mc(Z2, 2, True, 500, 9)
    with pytest.raises(ValidationError):
        torus_moment_mc(Z2, 1, True, 0, 1)


# -- polygons -------------------------------------------------------------------


def test_polytope_shapes():
    assert simplex().area() == 0.5
    assert crosspolytope().area() == 2.0
    assert unit_square().area() == 1.0
    w = Polytope2("wsimplex", (2, 3))
    assert w.area(exact=True) == Fraction(1, 12)
    assert Polytope2("wcross", (1, 2)).area(exact=True) == 1
    for bad in [("hexagon", None), ("simplex", (1, 1)), ("wcross", (1,)), ("wsimplex", (1, 0))]:
        with pytest.raises(ValidationError):
            Polytope2(*bad)


def test_clipping():
    sq = [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(0)), (Fraction(2), Fraction(2)), (Fraction(0), Fraction(2))]
    half = clip_halfplane(sq, 1, 1, 2)
    assert polygon_area(half) == 2
    assert clip_to_box(sq, 3, 3, 4, 4) == []
    assert polygon_area(clip_to_box(sq, 1, 1, 5, 5)) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8), st.integers(1, 5), st.integers(1, 5)), min_size=1, max_size=6))
def test_union_area_rectangles(rects):
    polys = [[(Fraction(x), Fraction(y)), (Fraction(x + w), Fraction(y)), (Fraction(x + w), Fraction(y + h)), (Fraction(x), Fraction(y + h))] for x, y, w, h in rects]
    cells = {(i, j) for x, y, w, h in rects for i in range(x, x + w) for j in range(y, y + h)}
    assert union_area(polys) == len(cells)


def test_union_area_triangles():
    t1 = [(Fraction(0), Fraction(0)), (Fraction(2), Fraction(0)), (Fraction(0), Fraction(2))]
    t2 = [(Fraction(2), Fraction(2)), (Fraction(0), Fraction(2)), (Fraction(2), Fraction(0))]
    assert union_area([t1, t2]) == 4
    t3 = [(Fraction(1), Fraction(0)), (Fraction(3), Fraction(0)), (Fraction(1), Fraction(2))]
    # t1 and t3 overlap in the triangle (1,0),(2,0),(1,1) of area 1/2
    assert union_area([t1, t3]) == Fraction(7, 2)


# -- covering radii -------------------------------------------------------------


def test_covering_examples():
    assert covering_radius_2d(Z2, crosspolytope()) == pytest.approx(1.0, abs=1e-9)
    assert covering_radius_2d(Z2, simplex()) == pytest.approx(2.0, abs=1e-9)
    assert covering_radius_2d(Z2, unit_square()) == pytest.approx(1.0, abs=1e-9)
    assert covering_radius_2d(omega_lattice(0.5, 0.6, 0.6), unit_square()) == pytest.approx(0.6**-0.5, abs=1e-8)
    assert covering_radius_2d(kappa_lattice(0.1, 0.1, 0.1), simplex()) == pytest.approx(0.28**-0.5, abs=1e-8)


def test_covering_exact_integer_lattice():
    lat = IntegerLattice(np.eye(2, dtype=int), 1)
    res = covering_radius_2d_result(lat, simplex())
    assert res.certified and res.radius == 2.0
    lat = kernel_lattice((2, 3), 8)
    assert covering_radius_2d_result(lat, simplex()).radius == 5.0
    assert covering_radius_2d_result(lat, crosspolytope()).radius == 2.5


def test_covering_rejects():
    with pytest.raises(ValidationError):
        covering_radius_2d(kernel_lattice((1, 2, 3), 7), simplex())
    with pytest.raises(ValidationError):
        covering_radius_2d(Z2, simplex(), tol=0)


def test_omega_kappa_examples():
    L = omega_lattice(0.5, 0.6, 0.6)
    assert abs(abs(np.linalg.det(L.basis)) - 1) < 1e-12
    assert delta(0.5, 0.6, 0.6) == pytest.approx(0.6)
    assert delta(0.9, 0.9, 0.2) == pytest.approx(0.27)
    omega_lattice(0.9, 0.9, 0.2)
    with pytest.raises(ValidationError):
        omega_lattice(0.5, 0.5, 0.5)
    assert kappa(0.1, 0.1, 0.1) == pytest.approx(0.28)
    assert kappa(0.2, 0.2, 0.05) == pytest.approx(0.31)
    with pytest.raises(ValidationError):
        kappa_lattice(0, 0, 0)


def test_oracle_lattices_random():
    rng = np.random.default_rng(10)
    for _ in range(40):
        p = sample_omega(rng)
        assert abs(covering_radius_2d(omega_lattice(*p), unit_square()) - delta(*p) ** -0.5) < 1e-6
        q = sample_kappa_region(rng)
        assert abs(covering_radius_2d(kappa_lattice(*q), simplex()) - kappa(*q) ** -0.5) < 1e-6


@settings(max_examples=25, deadline=None)
@given(st.floats(0.5, 2.0), st.sampled_from(["simplex", "cross"]), st.data())
def test_covering_scaling(c, shape, data):
    p = sample_omega(np.random.default_rng(data.draw(st.integers(0, 10**6))))
    L = omega_lattice(*p)
    P = Polytope2(shape)
    assert covering_radius_2d(L.scaled(c), P) == pytest.approx(c * covering_radius_2d(L, P), abs=1e-7)


def test_exact_and_float_agree():
    rng = np.random.default_rng(3)
    for _ in range(15):
        n = int(rng.integers(10, 120))
        a = sorted(rng.choice(np.arange(1, n), size=2, replace=False).tolist())
        if math.gcd(*a, n) != 1:
            continue
        lat = kernel_lattice(a, n)
        for P in (simplex(), crosspolytope()):
            ex = covering_radius_2d(lat, P, exact=True)
            fl = covering_radius_2d(lat, P, exact=False)
            assert abs(ex - fl) < 1e-8


@settings(max_examples=40, deadline=None)
@given(tuples2(max_n=150), st.sampled_from([(1, 1), (1, 2), (3, 2), (0.5, 1.5)]))
def test_directed_identity_and_sandwich(tup, lengths):
    a, n = tup
    lat = kernel_lattice(a, n)
    big_pi = n * lengths[0] * lengths[1]
    d_dir = diameter(build_circulant(n, a, lengths, directed=True))
    rho = rescaled_covering_radius(lat, n, lengths, "simplex")
    assert abs(d_dir + sum(lengths) - math.sqrt(big_pi) * rho) < 1e-6
    if 2 * a[1] <= n:
        d_und = diameter(build_circulant(n, a, lengths, directed=False))
        rt = math.sqrt(big_pi) * rescaled_covering_radius(lat, n, lengths, "cross")
        assert rt - sum(lengths) / 2 - 1e-9 <= d_und <= rt + 1e-9


def test_enumeration_budget_is_typed():
    # a lattice whose nonnegative cone is reached only far out still terminates
    lat = kernel_lattice((1, 999), 1000)
    assert shortest_nonneg(lat, (1, 1)) == brute_nonneg((1, 999), 1000, (1, 1))
    assert issubclass(BudgetExceeded, Exception)
