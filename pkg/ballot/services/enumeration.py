"""
Brute-force oracle: classify every counting order of an instance.

The oracle deliberately uses no closed forms; the bounds and the Takács series
are validated against it.
"""

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence, Tuple

from ballot.config import check_budget, default_workers
from ballot.encoding import ratio_json
from ballot.errors import PreconditionViolation
from ballot.services.core import (
    A,
    BallotSpec,
    RatioLike,
    VoteSequence,
    format_ratio,
    parse_ratio,
    scaled_steps,
)

logger = logging.getLogger("EnumerationService")


# ---------------------------------------------------------
# Classifiers
# ---------------------------------------------------------
def is_desirable(seq: VoteSequence, mu: RatioLike) -> bool:
    """S_r > 0 at every position, including the last (a > mu*b)."""
    up, down = scaled_steps(parse_ratio(mu))
    s = 0
    for vote in seq:
        s += up if vote == A else -down
        if s <= 0:
            return False
    return True


def is_cute(seq: VoteSequence, mu: RatioLike) -> bool:
    """S_r >= 0 at every position."""
    up, down = scaled_steps(parse_ratio(mu))
    s = 0
    for vote in seq:
        s += up if vote == A else -down
        if s < 0:
            return False
    return True


def _classify_positions(n: int, a_positions: Sequence[int], up: int, down: int) -> Tuple[bool, bool]:
    """(desirable, cute) for the sequence with A-votes at the given sorted positions."""
    s = 0
    desirable = True
    it = iter(a_positions)
    next_a = next(it, n)
    for r in range(n):
        if r == next_a:
            s += up
            next_a = next(it, n)
        else:
            s -= down
        if s <= 0:
            if s < 0:
                return False, False
            desirable = False
    return desirable, True


# ---------------------------------------------------------
# Exact counts
# ---------------------------------------------------------
@dataclass(frozen=True)
class ExactCounts:
    total: int
    desirable: int
    cute: int

    @property
    def p(self) -> Fraction:
        return Fraction(self.desirable, self.total)

    @property
    def p_star(self) -> Fraction:
        return Fraction(self.cute, self.total)

    @property
    def undesirable(self) -> int:
        return self.total - self.desirable

    @property
    def ugly(self) -> int:
        return self.total - self.cute

    def __add__(self, other: "ExactCounts") -> "ExactCounts":
        return ExactCounts(
            self.total + other.total,
            self.desirable + other.desirable,
            self.cute + other.cute,
        )

    def to_dict(self):
        return {
            "total": self.total,
            "desirable": self.desirable,
            "cute": self.cute,
            "P": ratio_json(self.p),
            "P_star": ratio_json(self.p_star),
        }


def iter_sequences(a: int, b: int) -> Iterator[VoteSequence]:
    """All C(a+b, a) sequences, lexicographic over the positions of the A-votes."""
    n = a + b
    for positions in combinations(range(n), a):
        yield VoteSequence.from_a_positions(n, positions)


def _count_block(n: int, a: int, first_a: Optional[int], up: int, down: int) -> ExactCounts:
    """
    Count one block of the sequence space: all sequences whose first A-vote is
    at position first_a (or, with first_a None, every sequence).
    """
    if first_a is None:
        blocks = combinations(range(n), a)
    else:
        blocks = ((first_a,) + rest for rest in combinations(range(first_a + 1, n), a - 1))

    total = desirable = cute = 0
    for positions in blocks:
        d, c = _classify_positions(n, positions, up, down)
        total += 1
        desirable += d
        cute += c
    return ExactCounts(total, desirable, cute)


def count_exact(
    spec: BallotSpec,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> ExactCounts:
    size = spec.sequence_count
    check_budget(size, budget)
    workers = default_workers() if workers is None else max(1, workers)

    n = spec.length
    up, down = scaled_steps(spec.mu)
    logger.info(f"Enumerating {size} sequences for {spec} with {workers} worker(s)")

    if workers == 1 or spec.a == 0:
        return _count_block(n, spec.a, None, up, down)

    # Blocks by first A position partition the space; merged by exact addition.
    firsts = range(spec.b + 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            _count_block,
            [n] * len(firsts),
            [spec.a] * len(firsts),
            firsts,
            [up] * len(firsts),
            [down] * len(firsts),
        )
        counts = ExactCounts(0, 0, 0)
        for part in parts:
            counts = counts + part
    return counts


# ---------------------------------------------------------
# Weighted variant
# ---------------------------------------------------------
@dataclass(frozen=True)
class WeightedBallotSpec:
    a: int
    weights: Tuple[Fraction, ...]
    mu: Fraction

    def __post_init__(self):
        weights = tuple(sorted(parse_ratio(w) for w in self.weights))
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "mu", parse_ratio(self.mu))
        if self.a < 0:
            raise PreconditionViolation(f"a must be nonnegative, got {self.a}")
        if any(w <= 0 for w in weights):
            raise PreconditionViolation("weights must be positive")
        if self.a + len(weights) < 1:
            raise PreconditionViolation("an election needs at least one vote (a + b' >= 1)")
        if self.mu < 0:
            raise PreconditionViolation(f"mu must be nonnegative, got {format_ratio(self.mu)}")

    @property
    def b_prime(self) -> int:
        return len(self.weights)

    @property
    def b(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def has_integer_weights(self) -> bool:
        return all(w.denominator == 1 for w in self.weights)

    @property
    def arrangement_count(self) -> int:
        """Distinct arrangements of a identical A-votes and the weight multiset."""
        count = math.factorial(self.a + self.b_prime)
        for repeats in self._multiplicities():
            count //= math.factorial(repeats)
        return count

    @property
    def multiplicity(self) -> int:
        """Orderings of distinguishable votes that collapse onto one arrangement."""
        m = 1
        for repeats in self._multiplicities():
            m *= math.factorial(repeats)
        return m

    def _multiplicities(self):
        yield self.a
        yield from Counter(self.weights).values()

    def to_dict(self):
        return {
            "a": self.a,
            "weights": [format_ratio(w) for w in self.weights],
            "mu": format_ratio(self.mu),
        }

    def __str__(self):
        weights = ",".join(format_ratio(w) for w in self.weights)
        return f"(a={self.a}, weights={{{weights}}}, mu={format_ratio(self.mu)})"


def _next_arrangement(items: list) -> bool:
    """Step items to the next arrangement in lexicographic order; False after the last."""
    i = len(items) - 2
    while i >= 0 and items[i] >= items[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(items) - 1
    while items[j] <= items[i]:
        j -= 1
    items[i], items[j] = items[j], items[i]
    items[i + 1:] = reversed(items[i + 1:])
    return True


def _arrangement_keys(wspec: WeightedBallotSpec):
    """
    Distinct values (None for an A-vote, then weights ascending) and a key
    generator stepping one key list through every arrangement in lexicographic
    order. The yielded list is mutated between steps.
    """
    values = [None] + sorted(set(wspec.weights))
    keys = sorted([0] * wspec.a + [values.index(w) for w in wspec.weights])

    def walk():
        while True:
            yield keys
            if not _next_arrangement(keys):
                return

    return values, walk()


def iter_weighted_arrangements(wspec: WeightedBallotSpec) -> Iterator[Tuple[Optional[Fraction], ...]]:
    """Distinct arrangements as tuples where None is an A-vote and a Fraction a weighted B-vote."""
    values, keys = _arrangement_keys(wspec)
    for arrangement in keys:
        yield tuple(values[k] for k in arrangement)


def _integer_steps(values, mu: Fraction):
    """Margin steps a_r - mu*b_r scaled by a common denominator to integers."""
    denominators = [mu.denominator * w.denominator for w in values[1:]]
    scale = math.lcm(*denominators) if denominators else 1
    return [scale] + [int(-mu * w * scale) for w in values[1:]]


def _classify_keys(keys, steps) -> Tuple[bool, bool]:
    s = 0
    desirable = True
    for k in keys:
        s += steps[k]
        if s <= 0:
            if s < 0:
                return False, False
            desirable = False
    return desirable, True


@dataclass(frozen=True)
class WeightedCounts(ExactCounts):
    multiplicity: int = 1

    def to_dict(self):
        result = super().to_dict()
        result["arrangements"] = self.total
        result["multiplicity"] = self.multiplicity
        return result


def count_exact_weighted(wspec: WeightedBallotSpec, budget: Optional[int] = None) -> WeightedCounts:
    """
    Every distinct arrangement stands for the same number of orderings of
    distinguishable votes, so arrangement counts give the probabilities
    directly; the shared multiplicity is reported alongside.
    """
    size = wspec.arrangement_count
    check_budget(size, budget)
    logger.info(f"Enumerating {size} weighted arrangements for {wspec}")

    values, arrangements = _arrangement_keys(wspec)
    steps = _integer_steps(values, wspec.mu)
    total = desirable = cute = 0
    for keys in arrangements:
        d, c = _classify_keys(keys, steps)
        total += 1
        desirable += d
        cute += c
    return WeightedCounts(total, desirable, cute, multiplicity=wspec.multiplicity)
