from fractions import Fraction

import pytest

from ballot.errors import DegenerateRecurrence, PreconditionViolation
from ballot.services.core import BallotSpec
from ballot.services.enumeration import count_exact
from ballot.services.takacs import (
    compare_with_oracle,
    takacs_coefficients,
    takacs_probability,
    takacs_residuals,
)
from tests.conftest import INTEGER_MUS, MU_TEST_SET, grid


@pytest.mark.parametrize(
    "mu,m,expected",
    [
        (Fraction(2), 2, [1, -2, -2]),
        (Fraction(3, 2), 2, [1, -1, -3]),
        (Fraction(4, 3), 2, [1, -1, -1]),
        (Fraction(5), 0, [1]),
        (Fraction(1, 2), 0, [1]),
    ],
)
def test_takacs_coefficients(mu, m, expected):
    coefficients = takacs_coefficients(mu, m)
    assert list(coefficients.values) == expected
    assert coefficients.values[0] == 1


@pytest.mark.parametrize("mu", [Fraction(1, 2), Fraction(0), Fraction(9, 10)])
def test_recurrence_degenerates_below_one(mu):
    with pytest.raises(DegenerateRecurrence):
        takacs_coefficients(mu, 1)


def test_negative_index_rejected():
    with pytest.raises(PreconditionViolation):
        takacs_coefficients(2, -1)


@pytest.mark.parametrize("mu", MU_TEST_SET)
def test_residuals_vanish(mu):
    coefficients = takacs_coefficients(mu, 10)
    assert takacs_residuals(coefficients) == [0] * 10


def test_prefixes_agree():
    long = takacs_coefficients(Fraction(5, 3), 9)
    short = takacs_coefficients(Fraction(5, 3), 4)
    assert long.values[:5] == short.values


@pytest.mark.parametrize(
    "a,b,mu,expected",
    [
        (5, 2, Fraction(2), Fraction(1, 7)),
        (5, 2, Fraction(3, 2), Fraction(1, 3)),
        (1, 0, Fraction(1), Fraction(1)),
        (1, 0, Fraction(7, 3), Fraction(1)),
        (3, 2, Fraction(4, 3), Fraction(1, 5)),
    ],
)
def test_takacs_probability(a, b, mu, expected):
    assert takacs_probability(BallotSpec(a, b, mu)) == expected


def test_takacs_needs_an_a_vote():
    with pytest.raises(PreconditionViolation):
        takacs_probability(BallotSpec(0, 2, 1))


def test_takacs_propagates_degenerate_recurrence():
    with pytest.raises(DegenerateRecurrence):
        takacs_probability(BallotSpec(5, 2, Fraction(1, 2)))


@pytest.mark.parametrize("mu", MU_TEST_SET)
def test_series_matches_oracle(mu):
    for a, b in grid(12, min_a=1):
        spec = BallotSpec(a, b, mu)
        if not a > mu * b:
            continue
        assert takacs_probability(spec) == count_exact(spec, workers=1).p, spec


@pytest.mark.parametrize("mu", INTEGER_MUS)
def test_series_matches_closed_form(mu):
    for a, b in grid(12, min_a=1):
        if a > mu * b:
            assert takacs_probability(BallotSpec(a, b, mu)) == (a - mu * b) / (a + b)


def test_comparison_outside_proven_domain_is_reported():
    specs = [
        BallotSpec(a, b, mu)
        for a, b in grid(8, min_a=1)
        for mu in (Fraction(1), Fraction(3, 2), Fraction(2))
        if a <= mu * b
    ]
    rows = compare_with_oracle(specs)
    assert len(rows) == len(specs)
    assert all(row.oracle == 0 for row in rows)
    assert all(row.series is not None for row in rows)
