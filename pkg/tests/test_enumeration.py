from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from ballot.errors import BudgetExceeded, PreconditionViolation
from ballot.services.core import BallotSpec, VoteSequence, binomial
from ballot.services.enumeration import (
    WeightedBallotSpec,
    count_exact,
    count_exact_weighted,
    is_cute,
    is_desirable,
    iter_sequences,
    iter_weighted_arrangements,
)
from tests.conftest import INTEGER_MUS, MU_TEST_SET, grid


def seq(text):
    return VoteSequence.from_text(text)


@pytest.mark.parametrize(
    "text,mu,expected",
    [
        ("AABAB", 1, True),
        ("ABAAB", 1, False),
        ("BA", Fraction(1, 2), False),
        ("BA", 0, False),
        ("AB", 0, True),
        ("AAB", Fraction(3, 2), True),
    ],
)
def test_is_desirable(text, mu, expected):
    assert is_desirable(seq(text), mu) is expected


@pytest.mark.parametrize(
    "text,mu,expected",
    [
        ("ABAB", 1, True),
        ("ABBA", 1, False),
        ("BBBA", 0, True),
        ("AABBB", Fraction(2, 3), True),
        ("AABBB", Fraction(3, 4), False),
    ],
)
def test_is_cute(text, mu, expected):
    assert is_cute(seq(text), mu) is expected


def test_iter_sequences_is_lexicographic_over_a_positions():
    assert [str(s) for s in iter_sequences(2, 1)] == ["AAB", "ABA", "BAA"]
    sequences = list(iter_sequences(4, 3))
    assert len(sequences) == binomial(7, 4)
    assert len(set(sequences)) == len(sequences)


@pytest.mark.parametrize(
    "a,b,mu,total,desirable,cute",
    [
        (3, 2, 1, 10, 2, 5),
        (2, 2, 1, 6, 0, 2),
        (5, 2, Fraction(3, 2), 21, 7, 9),
        (1, 0, 5, 1, 1, 1),
        (0, 3, 1, 1, 0, 0),
    ],
)
def test_count_exact(a, b, mu, total, desirable, cute):
    counts = count_exact(BallotSpec(a, b, mu), workers=1)
    assert (counts.total, counts.desirable, counts.cute) == (total, desirable, cute)
    assert counts.p == Fraction(desirable, total)
    assert counts.p_star == Fraction(cute, total)


def test_count_exact_reduces_probabilities():
    counts = count_exact(BallotSpec(5, 2, Fraction(3, 2)), workers=1)
    assert counts.p == Fraction(1, 3)
    assert counts.p_star == Fraction(3, 7)


def test_count_exact_budget():
    with pytest.raises(BudgetExceeded) as info:
        count_exact(BallotSpec(3, 2, 1), budget=9)
    assert info.value.size == 10
    assert count_exact(BallotSpec(3, 2, 1), budget=10).total == 10


def test_count_exact_budget_from_environment(monkeypatch):
    monkeypatch.setenv("BALLOT_ENUMERATION_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        count_exact(BallotSpec(3, 2, 1))


def test_parallel_count_matches_serial():
    spec = BallotSpec(7, 4, Fraction(4, 3))
    assert count_exact(spec, workers=3) == count_exact(spec, workers=1)


@pytest.mark.parametrize("mu", INTEGER_MUS)
def test_closed_forms_for_integer_mu(mu):
    for a, b in grid(14):
        counts = count_exact(BallotSpec(a, b, mu), workers=1)
        assert counts.total == binomial(a + b, a)
        if a > mu * b:
            assert counts.p == (a - mu * b) / (a + b)
        if a >= mu * b:
            assert counts.p_star == (a - mu * b + 1) / (a + 1)


@pytest.mark.parametrize("a,b", grid(10))
def test_probabilities_non_increasing_in_mu(a, b):
    previous = None
    for mu in [Fraction(0)] + MU_TEST_SET:
        counts = count_exact(BallotSpec(a, b, mu), workers=1)
        assert counts.desirable <= counts.cute <= counts.total
        if previous is not None:
            assert counts.p <= previous.p
            assert counts.p_star <= previous.p_star
        previous = counts


def test_mu_zero_degenerates():
    counts = count_exact(BallotSpec(3, 3, 0), workers=1)
    assert counts.cute == counts.total
    # desirable means the first vote is for A
    assert counts.desirable == binomial(5, 2)


# ---------------------------------------------------------
# Weighted variant
# ---------------------------------------------------------
@pytest.mark.parametrize(
    "a,weights,mu,p,total",
    [
        (3, (2,), 1, Fraction(1, 4), 4),
        (2, (2,), 1, Fraction(0), 3),
        (3, (1, 1), 1, Fraction(1, 5), 10),
        (1, (), 7, Fraction(1), 1),
    ],
)
def test_count_exact_weighted(a, weights, mu, p, total):
    counts = count_exact_weighted(WeightedBallotSpec(a, weights, mu))
    assert counts.p == p
    assert counts.total == total


def test_weighted_spec_validation():
    with pytest.raises(PreconditionViolation):
        WeightedBallotSpec(2, (0,), 1)
    with pytest.raises(PreconditionViolation):
        WeightedBallotSpec(0, (), 1)
    spec = WeightedBallotSpec(2, ("3/2", "1/2"), 1)
    assert spec.b == 2
    assert spec.b_prime == 2


def test_weighted_arrangements_are_distinct_and_complete():
    wspec = WeightedBallotSpec(3, (1, 1, 2), 1)
    arrangements = list(iter_weighted_arrangements(wspec))
    assert len(arrangements) == wspec.arrangement_count == 60
    assert len(set(arrangements)) == len(arrangements)
    assert wspec.multiplicity == 3 * 2 * 1 * 2


@pytest.mark.parametrize("mu", [Fraction(1), Fraction(3, 2), Fraction(2)])
def test_unit_weights_agree_with_unweighted_oracle(mu):
    for a, b in grid(9):
        weighted = count_exact_weighted(WeightedBallotSpec(a, (1,) * b, mu))
        plain = count_exact(BallotSpec(a, b, mu), workers=1)
        assert (weighted.total, weighted.desirable, weighted.cute) == (
            plain.total,
            plain.desirable,
            plain.cute,
        )


def test_weighted_budget():
    with pytest.raises(BudgetExceeded):
        count_exact_weighted(WeightedBallotSpec(4, (1, 2), 1), budget=10)


def test_weighted_desirable_implies_cute():
    for weights in combinations_with_replacement([Fraction(1, 2), Fraction(3, 2), 2], 3):
        counts = count_exact_weighted(WeightedBallotSpec(5, weights, Fraction(4, 3)))
        assert counts.desirable <= counts.cute <= counts.total
