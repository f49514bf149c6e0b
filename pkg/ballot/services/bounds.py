"""
Bounds on P and P*, the integer-mu closed forms, the weighted-vote bounds, and
the counting inequalities behind the two upper bounds.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional

from ballot.config import default_workers
from ballot.encoding import ratio_json
from ballot.errors import BudgetExceeded, DomainViolation
from ballot.services.core import (
    BallotSpec,
    binomial,
    format_ratio,
    is_integral,
    parse_ratio,
    ratio_floor,
)
from ballot.services.enumeration import ExactCounts, WeightedBallotSpec, count_exact

logger = logging.getLogger("BoundsService")


@dataclass(frozen=True)
class BoundPair:
    lower: Fraction
    upper: Fraction
    # Weighted variant only: the sharper upper bound valid for integer mu and weights
    integer_upper: Optional[Fraction] = None

    def contains(self, value: Fraction) -> bool:
        return self.lower <= value <= self.upper

    def to_dict(self):
        result = {"lower": ratio_json(self.lower), "upper": ratio_json(self.upper)}
        if self.integer_upper is not None:
            result["integer_upper"] = ratio_json(self.integer_upper)
        return result


@dataclass(frozen=True)
class ClosedForms:
    p: Fraction
    p_star: Fraction

    def to_dict(self):
        return {"P": ratio_json(self.p), "P_star": ratio_json(self.p_star)}


# ---------------------------------------------------------
# Theorem bounds
# ---------------------------------------------------------
def theorem1_bounds(spec: BallotSpec) -> BoundPair:
    """(a - floor(mu*b))/(a+b) <= P <= (a - floor(mu)*b)/(a+b), for a > mu*b."""
    a, b, mu = spec.a, spec.b, spec.mu
    if not a > mu * b:
        raise DomainViolation(f"the bounds on P are stated for a > mu*b; {spec} has P = 0")
    n = a + b
    return BoundPair(
        Fraction(a - ratio_floor(mu * b), n),
        Fraction(a - ratio_floor(mu) * b, n),
    )


def theorem2_bounds(spec: BallotSpec) -> BoundPair:
    """
    floor(a - mu*b + 1)/(a+b) <= P* <= (a + 1 - mu*b)/(a+1), for a >= mu*b.

    The cute-rotation count behind the lower bound cannot exceed a+b, so the
    numerator is capped there; this only bites when b = 0.
    """
    a, b, mu = spec.a, spec.b, spec.mu
    if not a >= mu * b:
        raise DomainViolation(f"the bounds on P* are stated for a >= mu*b; {spec} has P* = 0")
    return BoundPair(
        Fraction(min(ratio_floor(a - mu * b + 1), a + b), a + b),
        (a + 1 - mu * b) / (a + 1),
    )


def classical_closed_forms(spec: BallotSpec) -> Optional[ClosedForms]:
    """Exact P and P* when mu is a nonnegative integer; None otherwise."""
    if not is_integral(spec.mu):
        return None
    a, b, mu = spec.a, spec.b, spec.mu
    p = Fraction(a - mu * b, a + b) if a > mu * b else Fraction(0)
    p_star = (a - mu * b + 1) / (a + 1) if a >= mu * b else Fraction(0)
    return ClosedForms(p, p_star)


def weighted_bounds(wspec: WeightedBallotSpec) -> BoundPair:
    a, b, mu = wspec.a, wspec.b, wspec.mu
    n = a + wspec.b_prime
    lower = max(Fraction(0), Fraction(a - ratio_floor(mu * b), n))
    upper = Fraction(a, n)
    integer_upper = None
    if is_integral(mu) and wspec.has_integer_weights:
        integer_upper = max(Fraction(0), Fraction(a - ratio_floor(mu) * b, n))
    return BoundPair(lower, upper, integer_upper)


@dataclass(frozen=True)
class FloorIdentity:
    lhs: int
    rhs: int
    boundary_case: bool

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs + (1 if self.boundary_case else 0)


def floor_identity(spec: BallotSpec) -> FloorIdentity:
    """floor(a - mu*b + 1) against a - floor(mu*b); they differ by one exactly when a - mu*b - 1 is an integer."""
    margin = spec.margin
    return FloorIdentity(
        lhs=ratio_floor(margin + 1),
        rhs=spec.a - ratio_floor(spec.mu * spec.b),
        boundary_case=is_integral(margin - 1),
    )


# ---------------------------------------------------------
# Counting inequalities
# ---------------------------------------------------------
@dataclass(frozen=True)
class InequalityCheck:
    name: str
    applicable: bool
    lhs: Fraction
    rhs: Fraction
    # lhs divided by the reference binomial count, None when that count is 0
    measured_ratio: Optional[Fraction] = None

    @property
    def holds(self) -> bool:
        return not self.applicable or self.lhs >= self.rhs

    def to_dict(self):
        return {
            "name": self.name,
            "applicable": self.applicable,
            "lhs": ratio_json(self.lhs),
            "rhs": ratio_json(self.rhs),
            "holds": self.holds,
            "measured_ratio": ratio_json(self.measured_ratio),
        }


@dataclass(frozen=True)
class ReflectionReport:
    undesirable: InequalityCheck
    ugly: InequalityCheck

    @property
    def passed(self) -> bool:
        return self.undesirable.holds and self.ugly.holds

    def to_dict(self):
        return {
            "passed": self.passed,
            "undesirable": self.undesirable.to_dict(),
            "ugly": self.ugly.to_dict(),
        }


def _ratio_or_none(count: int, reference: int) -> Optional[Fraction]:
    return Fraction(count, reference) if reference else None


def reflection_counting_check(spec: BallotSpec, counts: ExactCounts) -> ReflectionReport:
    """
    undesirable >= (floor(mu) + 1) * C(a+b-1, b-1)   when a > mu*b
    ugly        >= mu * C(a+b, b-1)                  when a >= mu*b
    """
    a, b, mu = spec.a, spec.b, spec.mu

    shorter = binomial(a + b - 1, b - 1)
    undesirable = InequalityCheck(
        name="undesirable",
        applicable=a > mu * b,
        lhs=Fraction(counts.undesirable),
        rhs=Fraction((ratio_floor(mu) + 1) * shorter),
        measured_ratio=_ratio_or_none(counts.undesirable, shorter),
    )

    shifted = binomial(a + b, b - 1)
    ugly = InequalityCheck(
        name="ugly",
        applicable=a >= mu * b,
        lhs=Fraction(counts.ugly),
        rhs=mu * shifted,
        measured_ratio=_ratio_or_none(counts.ugly, shifted),
    )

    report = ReflectionReport(undesirable, ugly)
    if not report.passed:
        logger.warning(f"Reflection counting inequality failed at {spec}: {report.to_dict()}")
    return report


@dataclass(frozen=True)
class PrependedVoteReport:
    cute: int
    desirable_with_extra_a: int
    integer_mu: bool

    @property
    def holds(self) -> bool:
        if self.integer_mu:
            return self.cute == self.desirable_with_extra_a
        return self.cute <= self.desirable_with_extra_a

    def to_dict(self):
        return {
            "cute": self.cute,
            "desirable_with_extra_a": self.desirable_with_extra_a,
            "integer_mu": self.integer_mu,
            "holds": self.holds,
        }


def prepended_vote_check(spec: BallotSpec, budget: Optional[int] = None) -> PrependedVoteReport:
    """
    Putting one extra A-vote in front maps cute (a, b)-sequences onto the
    desirable (a+1, b)-sequences; for integer mu the map is onto.
    """
    cute = count_exact(spec, budget=budget, workers=1).cute
    extended = BallotSpec(spec.a + 1, spec.b, spec.mu)
    desirable = count_exact(extended, budget=budget, workers=1).desirable
    return PrependedVoteReport(cute, desirable, is_integral(spec.mu))


# ---------------------------------------------------------
# Tightness scan
# ---------------------------------------------------------
TIGHTNESS_FLAGS = ("theorem1_lower", "theorem1_upper", "theorem2_lower", "theorem2_upper")


@dataclass(frozen=True)
class TightnessRow:
    spec: BallotSpec
    counts: Optional[ExactCounts] = None
    theorem1: Optional[BoundPair] = None
    theorem2: Optional[BoundPair] = None
    closed_forms: Optional[ClosedForms] = None
    which_tight: Dict[str, bool] = field(default_factory=dict)
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.counts is None

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "P": ratio_json(self.counts.p) if self.counts else None,
            "P_star": ratio_json(self.counts.p_star) if self.counts else None,
            "theorem1": self.theorem1.to_dict() if self.theorem1 else None,
            "theorem2": self.theorem2.to_dict() if self.theorem2 else None,
            "closed_forms": self.closed_forms.to_dict() if self.closed_forms else None,
            "which_tight": dict(self.which_tight),
            "note": self.note,
        }


def _scan_instance(spec: BallotSpec, budget: Optional[int]) -> TightnessRow:
    try:
        counts = count_exact(spec, budget=budget, workers=1)
    except BudgetExceeded as e:
        logger.warning(f"Skipping {spec}: {e}")
        return TightnessRow(spec, note=f"skipped: {e.name}: {e}")

    theorem1 = theorem1_bounds(spec) if spec.a > spec.mu * spec.b else None
    theorem2 = theorem2_bounds(spec) if spec.a >= spec.mu * spec.b else None

    tight = {}
    if theorem1:
        tight["theorem1_lower"] = counts.p == theorem1.lower
        tight["theorem1_upper"] = counts.p == theorem1.upper
    if theorem2:
        tight["theorem2_lower"] = counts.p_star == theorem2.lower
        tight["theorem2_upper"] = counts.p_star == theorem2.upper

    return TightnessRow(spec, counts, theorem1, theorem2, classical_closed_forms(spec), tight)


def iter_scan_specs(a_range: Iterable[int], b_range: Iterable[int], mu_set: Iterable) -> List[BallotSpec]:
    mus = [parse_ratio(mu) for mu in mu_set]
    return [
        BallotSpec(a, b, mu)
        for a, b, mu in product(a_range, b_range, mus)
        if a + b >= 1
    ]


def tightness_scan(
    a_range: Iterable[int],
    b_range: Iterable[int],
    mu_set: Iterable,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[TightnessRow]:
    specs = iter_scan_specs(a_range, b_range, mu_set)
    workers = default_workers() if workers is None else max(1, workers)
    logger.info(f"Scanning {len(specs)} instances with {workers} worker(s)")

    if workers == 1:
        return [_scan_instance(spec, budget) for spec in specs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_scan_instance, specs, [budget] * len(specs)))


def describe_tightness(row: TightnessRow) -> str:
    if row.skipped:
        return f"{row.spec}: {row.note}"
    tight = [name for name in TIGHTNESS_FLAGS if row.which_tight.get(name)]
    return (
        f"{row.spec}: P={format_ratio(row.counts.p)} P*={format_ratio(row.counts.p_star)} "
        f"tight=[{', '.join(tight)}]"
    )
