import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballot.errors import ParseError, PreconditionViolation
from ballot.services.core import (
    BallotSpec,
    VoteSequence,
    binomial,
    format_ratio,
    lattice_path,
    parse_ratio,
    partial_sums,
    partial_tallies,
    ratio_floor,
)


@pytest.mark.parametrize(
    "x,expected",
    [(Fraction(3), 3), (Fraction(7, 3), 2), (Fraction(-1, 2), -1), (Fraction(-3), -3)],
)
def test_ratio_floor(x, expected):
    assert ratio_floor(x) == expected


@given(st.fractions(min_value=-50, max_value=50, max_denominator=12))
def test_ratio_floor_brackets_value(x):
    assert ratio_floor(x) <= x < ratio_floor(x) + 1


@pytest.mark.parametrize("n,k,expected", [(5, 0, 1), (7, 5, 21), (4, 6, 0), (4, -1, 0), (0, 0, 1)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


@given(n=st.integers(1, 200), k=st.integers(-3, 203))
@settings(max_examples=200)
def test_binomial_pascal_rule(n, k):
    # holds for every k once out-of-range coefficients are 0
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_binomial_is_arbitrary_precision():
    value = binomial(200, 100)
    assert value > 2 ** 64
    assert value == math.factorial(200) // math.factorial(100) ** 2


@pytest.mark.parametrize(
    "text,expected",
    [
        ("3/2", Fraction(3, 2)),
        ("7", Fraction(7)),
        ("1.5", Fraction(3, 2)),
        ("0.1", Fraction(1, 10)),
        (" 4/6 ", Fraction(2, 3)),
        (5, Fraction(5)),
    ],
)
def test_parse_ratio(text, expected):
    value = parse_ratio(text)
    assert value == expected
    assert parse_ratio(format_ratio(value)) == value


@pytest.mark.parametrize("text", ["", "abc", "1/0", "inf", "nan", "1/2/3"])
def test_parse_ratio_rejects_garbage(text):
    with pytest.raises(ParseError):
        parse_ratio(text)


def test_parse_ratio_rejects_float():
    with pytest.raises(ParseError):
        parse_ratio(1.5)


def test_format_ratio():
    assert format_ratio(Fraction(6, 4)) == "3/2"
    assert format_ratio(Fraction(4, 2)) == "2"
    assert format_ratio(Fraction(0)) == "0"


def test_ballot_spec_validation():
    assert BallotSpec(3, 2, "3/2").mu == Fraction(3, 2)
    with pytest.raises(PreconditionViolation):
        BallotSpec(0, 0, 1)
    with pytest.raises(PreconditionViolation):
        BallotSpec(1, 1, -1)
    with pytest.raises(PreconditionViolation):
        BallotSpec(-1, 2, 1)


def test_ballot_spec_derived_values():
    spec = BallotSpec(5, 2, Fraction(3, 2))
    assert spec.length == 7
    assert spec.margin == 2
    assert spec.sequence_count == 21


def test_vote_sequence_text_round_trip():
    seq = VoteSequence.from_text("AABAB")
    assert str(seq) == "AABAB"
    assert seq.a_count == 3
    assert seq.b_count == 2
    assert seq.matches(BallotSpec(3, 2, 1))


def test_vote_sequence_rejects_unknown_symbols():
    with pytest.raises(ParseError):
        VoteSequence.from_text("AXB")
    with pytest.raises(ParseError):
        VoteSequence.from_text("  ")


def test_rotation_moves_prefix_to_end():
    seq = VoteSequence.from_text("AABAB")
    assert str(seq.rotate(2)) == "BABAA"
    assert seq.rotate(5) == seq
    assert [r for r, _ in seq.rotations()] == [1, 2, 3, 4, 5]


@pytest.mark.parametrize(
    "text,mu,expected",
    [
        ("AABAB", 1, [1, 2, 1, 2, 1]),
        ("BAABA", 1, [-1, 0, 1, 0, 1]),
        ("AA", 0, [1, 2]),
        ("AAB", Fraction(3, 2), [1, 2, Fraction(1, 2)]),
    ],
)
def test_partial_tallies(text, mu, expected):
    tallies = partial_tallies(VoteSequence.from_text(text), mu)
    assert [t.s_r for t in tallies] == expected
    assert [t.r for t in tallies] == list(range(1, len(text) + 1))
    assert all(t.a_r + t.b_r == t.r for t in tallies)
    assert partial_sums(VoteSequence.from_text(text), mu) == expected


@given(
    mu=st.fractions(min_value=0, max_value=12, max_denominator=6),
    text=st.text(alphabet="AB", min_size=1, max_size=30),
)
def test_partial_sum_steps(mu, text):
    seq = VoteSequence.from_text(text)
    previous = Fraction(0)
    for tally in partial_tallies(seq, mu):
        assert tally.s_r - previous in (1, -mu)
        assert tally.s_r <= previous + 1
        assert tally.s_r == tally.a_r - mu * tally.b_r
        previous = tally.s_r
    assert partial_sums(seq, mu) == [t.s_r for t in partial_tallies(seq, mu)]


def test_lattice_path():
    path = lattice_path(VoteSequence.from_text("AAB"))
    assert path == [(0, 0), (0, 1), (0, 2), (1, 2)]
