"""
Rotation counting for the lower bounds.

Conventions: positions are 1-based; rotation-by-r erases the first r votes and
appends them, so rotation-by-(a+b) is the identity. For a cute base sequence
with partial sums S', rotation-by-r is cute exactly when S'_r <= S'_t for every
t in [r+1, a+b].
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Tuple

from ballot.config import check_budget
from ballot.encoding import ratio_json
from ballot.errors import NotRotatableToCute, PreconditionViolation
from ballot.services.core import (
    BallotSpec,
    RatioLike,
    VoteSequence,
    parse_ratio,
    partial_sums,
    ratio_floor,
    scaled_steps,
    scaled_walk,
)
from ballot.services.enumeration import is_cute, is_desirable, iter_sequences

logger = logging.getLogger("CycleLemmaService")


def canonical_cute_rotation(seq: VoteSequence, mu: RatioLike) -> Tuple[int, VoteSequence]:
    """Rotate by the first index attaining the minimum partial sum; the result is cute."""
    mu = parse_ratio(mu)
    walk = scaled_walk(seq.votes, *scaled_steps(mu))
    if walk[-1] < 0:
        raise NotRotatableToCute(f"{seq} ends at S = {seq.spec(mu).margin} < 0 under mu={mu}")
    pivot = walk.index(min(walk)) + 1
    return pivot, seq.rotate(pivot)


def _offsets_from_walk(walk: List[int]) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    Cute and desirable rotation offsets of a cute base with scaled partial
    sums walk[0..n-1] (walk[r-1] is S'_r).
    """
    n = len(walk)
    cute, desirable = set(), set()

    prefix_min = []
    running = None
    for s in walk:
        running = s if running is None else min(running, s)
        prefix_min.append(running)

    suffix_min = None  # min of S'_t for t > r
    for r in range(n, 0, -1):
        s_r = walk[r - 1]
        if suffix_min is None or s_r <= suffix_min:
            cute.add(r)
        # Desirable needs the first stretch strictly above S'_r and the
        # wrapped stretch S'_n - S'_r + S'_k > 0 for k <= r.
        first_stretch = suffix_min is None or s_r < suffix_min
        wrapped = walk[-1] - s_r + prefix_min[r - 1] > 0
        if first_stretch and wrapped:
            desirable.add(r)
        suffix_min = s_r if suffix_min is None else min(suffix_min, s_r)
    return frozenset(cute), frozenset(desirable)


def cute_rotation_offsets(base: VoteSequence, mu: RatioLike) -> FrozenSet[int]:
    mu = parse_ratio(mu)
    walk = scaled_walk(base.votes, *scaled_steps(mu))
    if min(walk) < 0:
        raise PreconditionViolation(f"{base} is not cute under mu={mu}")
    return _offsets_from_walk(walk)[0]


def direct_rotation_offsets(seq: VoteSequence, mu: RatioLike) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Cute and desirable offsets found by rotating and classifying each rotation."""
    cute, desirable = set(), set()
    for r, rotated in seq.rotations():
        if is_cute(rotated, mu):
            cute.add(r)
            if is_desirable(rotated, mu):
                desirable.add(r)
    return frozenset(cute), frozenset(desirable)


@dataclass(frozen=True)
class RotationAnalysis:
    base_sequence: VoteSequence
    pivot_index: int
    prefix_sums: Tuple[Fraction, ...]
    cute_rotation_offsets: FrozenSet[int]
    desirable_rotation_offsets: FrozenSet[int]

    def step_bound_violations(self) -> List[Tuple[int, int]]:
        """Consecutive cute offsets r_i < r_j with S'_{r_j} > S'_{r_i} + 1."""
        offsets = sorted(self.cute_rotation_offsets)
        violations = []
        for r_i, r_j in zip(offsets, offsets[1:]):
            if self.prefix_sums[r_j - 1] > self.prefix_sums[r_i - 1] + 1:
                violations.append((r_i, r_j))
        return violations

    def to_dict(self):
        return {
            "base_sequence": str(self.base_sequence),
            "pivot_index": self.pivot_index,
            "prefix_sums": [ratio_json(s) for s in self.prefix_sums],
            "cute_rotation_offsets": sorted(self.cute_rotation_offsets),
            "desirable_rotation_offsets": sorted(self.desirable_rotation_offsets),
        }


def analyze_rotations(seq: VoteSequence, mu: RatioLike) -> RotationAnalysis:
    mu = parse_ratio(mu)
    pivot, base = canonical_cute_rotation(seq, mu)
    walk = scaled_walk(base.votes, *scaled_steps(mu))
    cute, desirable = _offsets_from_walk(walk)
    return RotationAnalysis(
        base_sequence=base,
        pivot_index=pivot,
        prefix_sums=tuple(partial_sums(base, mu)),
        cute_rotation_offsets=cute,
        desirable_rotation_offsets=desirable,
    )


# ---------------------------------------------------------
# Rotation count bounds
# ---------------------------------------------------------
def cute_rotation_bound(spec: BallotSpec) -> Optional[int]:
    """min(floor(a - mu*b + 1), a+b) when a >= mu*b; None otherwise."""
    if spec.margin < 0:
        return None
    return min(ratio_floor(spec.margin + 1), spec.length)


def desirable_rotation_bound(spec: BallotSpec) -> Optional[int]:
    """min(a - floor(mu*b), a+b) when a > mu*b; None otherwise."""
    if spec.margin <= 0:
        return None
    return min(spec.a - ratio_floor(spec.mu * spec.b), spec.length)


@dataclass(frozen=True)
class RotationCountReport:
    sequence: VoteSequence
    cute_rotations: int
    desirable_rotations: int
    cute_bound: Optional[int]
    desirable_bound: Optional[int]

    @property
    def cute_holds(self) -> bool:
        return self.cute_bound is None or self.cute_rotations >= self.cute_bound

    @property
    def desirable_holds(self) -> bool:
        return self.desirable_bound is None or self.desirable_rotations >= self.desirable_bound

    @property
    def passed(self) -> bool:
        return self.cute_holds and self.desirable_holds

    def to_dict(self):
        return {
            "sequence": str(self.sequence),
            "cute_rotations": self.cute_rotations,
            "desirable_rotations": self.desirable_rotations,
            "cute_bound": self.cute_bound,
            "desirable_bound": self.desirable_bound,
            "passed": self.passed,
        }


def rotation_count_bounds_check(seq: VoteSequence, spec: BallotSpec) -> RotationCountReport:
    if not seq.matches(spec):
        raise PreconditionViolation(f"{seq} does not have a={spec.a} A-votes and b={spec.b} B-votes")
    cute, desirable = direct_rotation_offsets(seq, spec.mu)
    report = RotationCountReport(
        sequence=seq,
        cute_rotations=len(cute),
        desirable_rotations=len(desirable),
        cute_bound=cute_rotation_bound(spec),
        desirable_bound=desirable_rotation_bound(spec),
    )
    if not report.passed:
        logger.warning(f"Rotation count bound failed for {seq} at {spec}: {report.to_dict()}")
    return report


# ---------------------------------------------------------
# Averaging over all sequences
# ---------------------------------------------------------
@dataclass(frozen=True)
class AveragingReport:
    spec: BallotSpec
    cute_rotation_total: int
    cute_sequences: int
    desirable_rotation_total: int
    desirable_sequences: int

    @property
    def cute_holds(self) -> bool:
        return self.cute_rotation_total == self.spec.length * self.cute_sequences

    @property
    def desirable_holds(self) -> bool:
        return self.desirable_rotation_total == self.spec.length * self.desirable_sequences

    @property
    def passed(self) -> bool:
        return self.cute_holds and self.desirable_holds

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "cute_rotation_total": self.cute_rotation_total,
            "cute_sequences": self.cute_sequences,
            "desirable_rotation_total": self.desirable_rotation_total,
            "desirable_sequences": self.desirable_sequences,
            "passed": self.passed,
        }


def rotation_average_identity_check(spec: BallotSpec, budget: Optional[int] = None) -> AveragingReport:
    """Sum over all sequences of their cute rotations equals (a+b) times the cute count."""
    check_budget(spec.sequence_count, budget)
    logger.info(f"Averaging rotations over {spec.sequence_count} sequences for {spec}")

    cute_total = desirable_total = cute_count = desirable_count = 0
    for seq in iter_sequences(spec.a, spec.b):
        cute, desirable = direct_rotation_offsets(seq, spec.mu)
        cute_total += len(cute)
        desirable_total += len(desirable)
        cute_count += is_cute(seq, spec.mu)
        desirable_count += is_desirable(seq, spec.mu)

    return AveragingReport(spec, cute_total, cute_count, desirable_total, desirable_count)
