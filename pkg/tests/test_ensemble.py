import math

import numpy as np
import pytest
from scipy import stats

from brute import count_tuples_fplus
from circdiam import BudgetExceeded, ValidationError
from circdiam.ensemble import (
    DomainSpec,
    LengthModel,
    asymptotic_count,
    count_tuples,
    domain_from_name,
    length_model_from_name,
    lengths_for,
    sample_tuple,
    sample_tuples,
)
from circdiam.special import zeta

FPLUS = domain_from_name("fplus")
F = domain_from_name("f")


def test_zeta_values():
    assert zeta(2) == pytest.approx(math.pi**2 / 6, abs=1e-14)
    assert zeta(3) == pytest.approx(1.2020569031595942, abs=1e-14)
    assert zeta(4) == pytest.approx(math.pi**4 / 90, abs=1e-14)
    with pytest.raises(ValueError):
        zeta(1)


def test_volumes():
    assert FPLUS.exact_volume == pytest.approx(1 / 6)
    assert F.exact_volume == pytest.approx(1 / 24)
    assert domain_from_name("fplus", k=3).exact_volume == pytest.approx(1 / 24)
    assert domain_from_name("f", cap=2.0).exact_volume == pytest.approx(8 / 24)


def test_volume_monte_carlo():
    rng = np.random.default_rng(0)
    x = rng.random((400_000, 3))
    assert F.contains_many(x).mean() == pytest.approx(1 / 24, rel=0.03)
    assert FPLUS.contains_many(x).mean() == pytest.approx(1 / 6, rel=0.01)


def test_sample_fplus():
    tuples = sample_tuples(FPLUS, 1000, 2000, seed=4)
    for a, n in tuples:
        assert 0 < a[0] < a[1] < n <= 1000
        assert math.gcd(*a, n) == 1


def test_sample_f_half():
    for a, n in sample_tuples(F, 10, 500, seed=1):
        assert 0 < a[0] < a[1] and 2 * a[1] <= n <= 10
        assert math.gcd(*a, n) == 1


def test_sample_empty_domain():
    with pytest.raises(BudgetExceeded):
        sample_tuples(FPLUS, 2, 5, seed=0)
    with pytest.raises(ValidationError):
        sample_tuples(FPLUS, 100, 0, seed=0)


def test_sample_deterministic_and_indexable():
    a = sample_tuples(FPLUS, 500, 50, seed=9)
    assert a == sample_tuples(FPLUS, 500, 50, seed=9)
    assert a != sample_tuples(FPLUS, 500, 50, seed=10)
    assert [sample_tuple(FPLUS, 500, 9, i) for i in (49, 3, 0)] == [a[49], a[3], a[0]]


def test_seed_streams_do_not_collide():
    # (seed, index) pairs that agree under XOR must still differ
    assert sample_tuple(FPLUS, 1000, 1, 0) != sample_tuple(FPLUS, 1000, 0, 1)


def test_low_acceptance_is_typed():
    tiny = DomainSpec(k=2, kind="custom", predicate=lambda x: np.zeros(len(x), dtype=bool), box=((0, 0, 0), (1, 1, 1)))
    with pytest.raises(BudgetExceeded):
        sample_tuples(tiny, 50, 1, seed=0)


def test_custom_domain():
    box = DomainSpec(k=1, kind="custom", predicate=lambda x: (x[:, 0] < x[:, 1]), box=((0, 0), (1, 1)))
    for a, n in sample_tuples(box, 50, 100, seed=3):
        assert 0 < a[0] < n <= 50 and math.gcd(a[0], n) == 1
    assert count_tuples(box, 30) == sum(1 for n in range(1, 31) for a in range(1, n) if math.gcd(a, n) == 1)


def test_uniform_on_domain_chi2():
    # 8 equiprobable cells of F: n/T against 2^{-1/3}, a2/n against 1/(2 sqrt 2), a1/a2 against 1/2
    tuples = sample_tuples(F, 1000, 100_000, seed=12)
    arr = np.array([(a[0], a[1], n) for a, n in tuples], dtype=float)
    c = (
        (arr[:, 2] / 1000 <= 2 ** (-1 / 3)).astype(int) * 4
        + (arr[:, 1] / arr[:, 2] <= 1 / (2 * math.sqrt(2))).astype(int) * 2
        + (arr[:, 0] / arr[:, 1] <= 0.5).astype(int)
    )
    counts = np.bincount(c, minlength=8)
    assert stats.chisquare(counts).pvalue > 0.001


@pytest.mark.parametrize("T", [2, 5, 12, 25])
def test_count_brute(T):
    assert count_tuples(FPLUS, T) == count_tuples_fplus(T)
    assert count_tuples(F, T) == count_tuples_fplus(T, half=True)


def test_count_examples():
    assert count_tuples(FPLUS, 2) == 0
    assert count_tuples(FPLUS, 100) / asymptotic_count(FPLUS, 100) == pytest.approx(1, abs=0.03)
    assert asymptotic_count(FPLUS, 1000) == pytest.approx(1e9 / (6 * zeta(3)))
    assert asymptotic_count(FPLUS, 0) == 0
    with pytest.raises(BudgetExceeded):
        count_tuples(FPLUS, 1000)


def test_domain_validation():
    for bad in [dict(k=0), dict(k=2, kind="sphere"), dict(k=2, cap=0), dict(k=2, kind="custom")]:
        with pytest.raises(ValidationError):
            DomainSpec(**bad)
    with pytest.raises(ValidationError):
        domain_from_name("torus")
    custom = DomainSpec(k=1, kind="custom", predicate=lambda x: x[:, 0] > 0, box=((0, 0), (1, 1)))
    with pytest.raises(ValidationError):
        asymptotic_count(custom, 10)


def test_lengths_for_examples():
    assert lengths_for(LengthModel("unit"), (2, 3), 8) == ((1, 1), 1.0)
    assert lengths_for(LengthModel("frobenius"), (3,), 5) == ((3,), 0.2)
    assert lengths_for(LengthModel("fixed", (2, 1)), (2, 3), 8) == ((2, 1), 1.0)
    with pytest.raises(ValidationError):
        lengths_for(LengthModel("fixed", (2, 1, 1)), (2, 3), 8)


def test_length_model_parsing():
    assert length_model_from_name("unit") == LengthModel("unit")
    assert length_model_from_name("frobenius").kind == "frobenius"
    m = length_model_from_name("fixed:2,1.5")
    assert m.values == (2, 1.5) and str(m) == "fixed:2,1.5"
    for bad in ["fixed:0,1", "fixed:", "golden", "fixed:a"]:
        with pytest.raises((ValidationError, ValueError)):
            length_model_from_name(bad)
