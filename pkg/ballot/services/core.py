"""
Exact arithmetic, problem instances, vote sequences and partial tallies.

Every probability and partial sum is a ``fractions.Fraction``; nothing on the
computation path goes through floating point. Classifiers work on the scaled
integer walk ``q * S_r`` (for ``mu = p/q``), which moves ``+q`` on an A-vote and
``-p`` on a B-vote and has the same sign as ``S_r`` at every position.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Iterator, List, Tuple, Union

from ballot.errors import ParseError, PreconditionViolation

Ratio = Fraction
RatioLike = Union[Fraction, int, str]

A = "A"
B = "B"


# ---------------------------------------------------------
# Ratio helpers
# ---------------------------------------------------------
def parse_ratio(text: RatioLike) -> Fraction:
    """
    Parse "p/q", an integer, or a finite decimal such as "1.5" into an exact
    Fraction. Decimals are converted digit for digit, never through float.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise ParseError(f"ratio must be given as text or an integer, not {type(text).__name__}")
    if isinstance(text, int):
        return Fraction(text)

    raw = str(text).strip()
    if not raw or raw.lower() in {"inf", "-inf", "+inf", "nan", "infinity"}:
        raise ParseError(f"not a finite ratio: {text!r}")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a ratio: {text!r} ({e})") from None


def format_ratio(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def ratio_floor(x: RatioLike) -> int:
    return math.floor(Fraction(x))


def is_integral(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def scaled_steps(mu: Fraction) -> Tuple[int, int]:
    """(up, down) such that q*S_r moves +up on A and -down on B."""
    mu = Fraction(mu)
    return mu.denominator, mu.numerator


# ---------------------------------------------------------
# Problem instance
# ---------------------------------------------------------
@dataclass(frozen=True)
class BallotSpec:
    a: int
    b: int
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu", parse_ratio(self.mu))
        if self.a < 0 or self.b < 0:
            raise PreconditionViolation(f"vote counts must be nonnegative, got a={self.a}, b={self.b}")
        if self.a + self.b < 1:
            raise PreconditionViolation("an election needs at least one vote (a + b >= 1)")
        if self.mu < 0:
            raise PreconditionViolation(f"mu must be nonnegative, got {format_ratio(self.mu)}")

    @property
    def length(self) -> int:
        return self.a + self.b

    @property
    def margin(self) -> Fraction:
        """Final weighted partial sum a - mu*b."""
        return self.a - self.mu * self.b

    @property
    def sequence_count(self) -> int:
        return binomial(self.a + self.b, self.a)

    def to_dict(self):
        return {"a": self.a, "b": self.b, "mu": format_ratio(self.mu)}

    def __str__(self):
        return f"(a={self.a}, b={self.b}, mu={format_ratio(self.mu)})"


# ---------------------------------------------------------
# Vote sequences
# ---------------------------------------------------------
@dataclass(frozen=True)
class VoteSequence:
    votes: Tuple[str, ...]
    a_count: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        votes = tuple(self.votes)
        bad = {v for v in votes if v not in (A, B)}
        if bad:
            raise ParseError(f"votes must be 'A' or 'B', got {sorted(bad)}")
        object.__setattr__(self, "votes", votes)
        object.__setattr__(self, "a_count", votes.count(A))

    @classmethod
    def from_text(cls, text: str) -> "VoteSequence":
        cleaned = text.strip()
        if not cleaned:
            raise ParseError("vote sequence is empty")
        return cls(tuple(cleaned))

    @classmethod
    def from_a_positions(cls, length: int, positions) -> "VoteSequence":
        chosen = set(positions)
        return cls(tuple(A if i in chosen else B for i in range(length)))

    @property
    def b_count(self) -> int:
        return len(self.votes) - self.a_count

    def spec(self, mu: RatioLike) -> BallotSpec:
        return BallotSpec(self.a_count, self.b_count, parse_ratio(mu))

    def rotate(self, r: int) -> "VoteSequence":
        """Erase the first r votes and append them; r = len is the identity."""
        n = len(self.votes)
        r %= n
        return VoteSequence(self.votes[r:] + self.votes[:r])

    def rotations(self) -> Iterator[Tuple[int, "VoteSequence"]]:
        for r in range(1, len(self.votes) + 1):
            yield r, self.rotate(r)

    def matches(self, spec: BallotSpec) -> bool:
        return self.a_count == spec.a and self.b_count == spec.b

    def __len__(self):
        return len(self.votes)

    def __iter__(self):
        return iter(self.votes)

    def __getitem__(self, index):
        return self.votes[index]

    def __str__(self):
        return "".join(self.votes)


@dataclass(frozen=True)
class PartialTally:
    r: int
    a_r: int
    b_r: int
    s_r: Fraction

    def to_dict(self):
        return {"r": self.r, "a_r": self.a_r, "b_r": self.b_r, "S_r": format_ratio(self.s_r)}


def partial_tallies(seq: VoteSequence, mu: RatioLike) -> List[PartialTally]:
    if len(seq) == 0:
        raise PreconditionViolation("partial tallies need a nonempty sequence")
    mu = parse_ratio(mu)
    tallies = []
    a_r = b_r = 0
    for r, vote in enumerate(seq, start=1):
        if vote == A:
            a_r += 1
        else:
            b_r += 1
        tallies.append(PartialTally(r, a_r, b_r, a_r - mu * b_r))
    return tallies


def partial_sums(seq: VoteSequence, mu: RatioLike) -> List[Fraction]:
    """S_1 ... S_n as exact rationals."""
    mu = parse_ratio(mu)
    return [Fraction(s, mu.denominator) for s in scaled_walk(seq.votes, *scaled_steps(mu))]


def scaled_walk(votes, up: int, down: int) -> List[int]:
    return list(accumulate(up if v == A else -down for v in votes))


def lattice_path(seq: VoteSequence) -> List[Tuple[int, int]]:
    """Points (b_r, a_r) from the origin to (b, a); an A-vote steps up, a B-vote right."""
    points = [(0, 0)]
    x = y = 0
    for vote in seq:
        if vote == A:
            y += 1
        else:
            x += 1
        points.append((x, y))
    return points
