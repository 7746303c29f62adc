import math
from fractions import Fraction

import pytest

from cplab.eval.oracle import exact_model_expectations
from cplab.model.catalan import catalan
from cplab.model.catalan import catalan_asymptotic
from cplab.model.catalan import catalan_by_convolution
from cplab.model.catalan import catalan_ratio
from cplab.model.catalan import expected_isolated_by_halflength
from cplab.model.catalan import gamma_bounds
from cplab.model.catalan import gamma_term
from cplab.model.catalan import gap_profile
from cplab.model.catalan import isolating_fillings
from cplab.model.catalan import match_probability
from cplab.model.catalan import validate_pair
from cplab.model.sampler import FAIR
from cplab.model.utils import InvalidPairError
from cplab.model.utils import PairRejection
from cplab.model.utils import ValidationError


@pytest.mark.parametrize("n, value", [(0, 1), (1, 1), (3, 5), (5, 42), (8, 1430), (10, 16796)])
def test_catalan_values(n, value):
    assert catalan(n, verify=True) == value


def test_binomial_matches_convolution():
    for n in range(40):
        assert catalan(n) == catalan_by_convolution(n)


def test_catalan_rejects_negative():
    with pytest.raises(ValidationError):
        catalan(-1)


def test_asymptotic_estimate():
    assert catalan_asymptotic(1) == pytest.approx(4 / math.sqrt(math.pi))
    assert catalan(10) / catalan_asymptotic(10) == pytest.approx(0.898, abs=1e-3)
    assert 0.99 < catalan_ratio(1000) < 1.0
    assert catalan_asymptotic(10**6) == math.inf


def test_ratio_increases_towards_one():
    ratios = [catalan_ratio(n) for n in (10, 100, 1000)]
    assert ratios == sorted(ratios)
    assert all(r < 1 for r in ratios)


# valid pairs


def test_validate_pair_accepts_nested_arcs():
    p = validate_pair(8, (2, 4), (5, 2))
    assert p.arcs == ((2, 11), (4, 7))
    assert validate_pair(2, (1, 2), (2, 1)).arcs == ((1, 4), (2, 3))


@pytest.mark.parametrize(
    "n, x, k, reason",
    [
        (3, (1, 3), (2, 2), PairRejection.CROSSING),
        (2, (3,), (2,), PairRejection.RANGE),
        (2, (1, 3), (2, 1), PairRejection.DUPLICATE_ENDPOINT),
    ],
)
def test_validate_pair_names_the_violation(n, x, k, reason):
    with pytest.raises(InvalidPairError) as info:
        validate_pair(n, x, k)
    assert info.value.reason is reason


def test_validate_pair_preconditions():
    with pytest.raises(ValidationError):
        validate_pair(4, (3, 1), (1, 1))
    with pytest.raises(ValidationError):
        validate_pair(4, (1,), (1, 2))


@pytest.mark.parametrize(
    "n, x, k, profile",
    [
        (8, (2, 4), (5, 2), (3, 2, 1)),
        (2, (1,), (2,), (0, 1)),
        (2, (1, 2), (2, 1), (0, 0, 0)),
    ],
)
def test_gap_profile(n, x, k, profile):
    assert tuple(gap_profile(validate_pair(n, x, k))) == profile


@pytest.mark.parametrize(
    "n, x, k, prob",
    [
        (1, (1,), (1,), Fraction(1)),
        (2, (1,), (2,), Fraction(1, 2)),
        (8, (2, 4), (5, 2), Fraction(1, 143)),
    ],
)
def test_match_probability(n, x, k, prob):
    assert match_probability(validate_pair(n, x, k)) == prob


def test_point_one_is_matched_somewhere():
    for n in range(1, 7):
        total = sum(match_probability(validate_pair(n, (1,), (k,))) for k in range(1, n + 1))
        assert total == 1


# isolated-vertex constant


@pytest.mark.parametrize("m, term", [(1, Fraction(1, 4)), (2, Fraction(1, 32)), (3, Fraction(5, 512))])
def test_gamma_terms(m, term):
    assert gamma_term(m) == term


def test_isolating_fillings_closed_form():
    for m in range(1, 61):
        assert isolating_fillings(m) == catalan(m - 1) * catalan(m)


def test_gamma_terms_tail_bound():
    for m in range(2, 101):
        assert gamma_term(m) <= Fraction(1, 4 * (m - 1) ** 2)


def test_gamma_bounds_small():
    b = gamma_bounds(2)
    assert b.lower == Fraction(9, 32)
    assert b.upper == Fraction(17, 32)
    assert b.as_floats() == (0.28125, 0.53125)


def test_gamma_bounds_gap_is_exact():
    for M in (2, 3, 10, 57):
        b = gamma_bounds(M)
        assert b.upper - b.lower == Fraction(1, 4 * (M - 1))
        assert b.lower == sum((gamma_term(m) for m in range(1, M + 1)), Fraction(0))


def test_gamma_bracket():
    small, big = gamma_bounds(10), gamma_bounds(10**4)
    assert 0.30234 <= big.lower and big.upper <= 0.30238
    assert small.lower < big.lower < big.upper < small.upper


def test_gamma_bounds_rejects_m_below_two():
    with pytest.raises(ValidationError):
        gamma_bounds(1)


# exact isolated counts by half-length


def test_isolated_by_halflength_small():
    assert expected_isolated_by_halflength(1, 1) == 1
    assert expected_isolated_by_halflength(2, 1) == Fraction(9, 8)
    assert expected_isolated_by_halflength(2, 2) == Fraction(3, 8)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_isolated_by_halflength_sums_to_enumeration(n):
    total = sum(expected_isolated_by_halflength(n, m) for m in range(1, n + 1))
    assert total == exact_model_expectations(n, FAIR).expected_isolated


def test_isolated_by_halflength_bounds():
    with pytest.raises(ValidationError):
        expected_isolated_by_halflength(3, 4)
    with pytest.raises(ValidationError):
        expected_isolated_by_halflength(3, 0)
