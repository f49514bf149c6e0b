"""
Takács' exact series for P.

    P = a/(a+b) * sum_{j=0}^{b} C_j * C(b, j) / C(a+b-1, j)

with C_0 = 1 and, for every k >= 1,

    sum_{j=0}^{k} C_j * C(k, j) / C(floor(k*mu) + k - 1, j) = 0.

Each recurrence instance is solved for C_k in turn. When floor(k*mu) = 0 the
C_k term divides by C(k - 1, k) = 0, so the recurrence only determines the
coefficients for mu >= 1.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

from ballot.encoding import ratio_json
from ballot.errors import DegenerateRecurrence, PreconditionViolation
from ballot.services.core import (
    BallotSpec,
    RatioLike,
    binomial,
    format_ratio,
    parse_ratio,
    ratio_floor,
)
from ballot.services.enumeration import count_exact

logger = logging.getLogger("TakacsService")


@dataclass(frozen=True)
class TakacsCoefficients:
    mu: Fraction
    values: Tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.values) - 1

    def to_dict(self):
        return {
            "mu": format_ratio(self.mu),
            "values": [ratio_json(c) for c in self.values],
        }


def _recurrence_top(mu: Fraction, k: int) -> int:
    return ratio_floor(k * mu) + k - 1


@lru_cache(maxsize=256)
def _coefficient_prefix(mu: Fraction, m: int) -> Tuple[Fraction, ...]:
    values = [Fraction(1)]
    for k in range(1, m + 1):
        top = _recurrence_top(mu, k)
        pivot = binomial(top, k)
        if pivot == 0:
            raise DegenerateRecurrence(
                f"recurrence instance k={k} needs C({top}, {k}) != 0, "
                f"which fails for mu={format_ratio(mu)} (floor(k*mu) = 0); "
                "use the enumeration oracle for mu < 1"
            )
        partial = sum(
            (values[j] * Fraction(binomial(k, j), binomial(top, j)) for j in range(k)),
            Fraction(0),
        )
        # C(k, k) = 1, so the k-th term is C_k / C(top, k)
        values.append(-partial * pivot)
    return tuple(values)


def takacs_coefficients(mu: RatioLike, m: int) -> TakacsCoefficients:
    if m < 0:
        raise PreconditionViolation(f"coefficient index must be nonnegative, got {m}")
    mu = parse_ratio(mu)
    return TakacsCoefficients(mu, _coefficient_prefix(mu, m))


def takacs_residuals(coefficients: TakacsCoefficients) -> List[Fraction]:
    """Left-hand side of every recurrence instance k = 1..m; each is 0 for a correct prefix."""
    mu = coefficients.mu
    values = coefficients.values
    residuals = []
    for k in range(1, coefficients.m + 1):
        top = _recurrence_top(mu, k)
        residuals.append(
            sum(
                (values[j] * Fraction(binomial(k, j), binomial(top, j)) for j in range(k + 1)),
                Fraction(0),
            )
        )
    return residuals


def takacs_probability(spec: BallotSpec) -> Fraction:
    if spec.a < 1:
        raise PreconditionViolation("the series needs a >= 1 (C(a+b-1, j) vanishes for j = b otherwise)")
    coefficients = takacs_coefficients(spec.mu, spec.b)
    n = spec.length
    series = sum(
        (c * Fraction(binomial(spec.b, j), binomial(n - 1, j)) for j, c in enumerate(coefficients.values)),
        Fraction(0),
    )
    return Fraction(spec.a, n) * series


@dataclass(frozen=True)
class OracleComparison:
    spec: BallotSpec
    series: Optional[Fraction]
    oracle: Fraction
    note: str = ""

    @property
    def agrees(self) -> bool:
        return self.series == self.oracle

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "series": ratio_json(self.series),
            "oracle": ratio_json(self.oracle),
            "agrees": self.agrees,
            "note": self.note,
        }


def compare_with_oracle(specs: Iterable[BallotSpec], budget: Optional[int] = None) -> List[OracleComparison]:
    """
    Evaluate the series next to the enumeration oracle. Disagreements are
    logged and returned, not raised: outside a > mu*b the series carries no
    guarantee.
    """
    rows = []
    for spec in specs:
        oracle = count_exact(spec, budget=budget, workers=1).p
        try:
            series = takacs_probability(spec)
            note = ""
        except (DegenerateRecurrence, PreconditionViolation) as e:
            series, note = None, f"{e.name}: {e}"
        row = OracleComparison(spec, series, oracle, note)
        if not row.agrees:
            logger.warning(f"Series {series} differs from oracle {oracle} at {spec}")
        rows.append(row)
    return rows
