"""
Command dispatch shared by the CLI and the HTTP API.

Both surfaces turn their input into a CommandRequest; `execute` returns a JSON
-ready payload and `render_text` turns the same payload into the human output.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from ballot.config import Config
from ballot.encoding import ratio_from_json, ratio_json
from ballot.errors import DomainViolation, ParseError
from ballot.services.bounds import (
    classical_closed_forms,
    describe_tightness,
    floor_identity,
    prepended_vote_check,
    reflection_counting_check,
    theorem1_bounds,
    theorem2_bounds,
    tightness_scan,
    weighted_bounds,
)
from ballot.services.core import (
    BallotSpec,
    VoteSequence,
    format_ratio,
    lattice_path,
    parse_ratio,
    partial_tallies,
)
from ballot.services.cyclelemma import (
    analyze_rotations,
    rotation_average_identity_check,
    rotation_count_bounds_check,
)
from ballot.services.enumeration import WeightedBallotSpec, count_exact, count_exact_weighted
from ballot.services.montecarlo import sample_probability
from ballot.services.takacs import compare_with_oracle, takacs_coefficients, takacs_probability

logger = logging.getLogger("BallotCommands")

SUBCOMMANDS = ("exact", "bounds", "takacs", "cycle", "weighted", "sample", "scan")
OUTPUT_MODES = ("text", "json")


@dataclass
class CommandRequest:
    subcommand: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    output_mode: str = "text"

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ParseError(f"unknown subcommand {self.subcommand!r}; expected one of {', '.join(SUBCOMMANDS)}")
        if self.output_mode not in OUTPUT_MODES:
            raise ParseError(f"unknown output mode {self.output_mode!r}")

    def has(self, name: str) -> bool:
        return self.parameters.get(name) not in (None, "")

    def integer(self, name: str, default: Optional[int] = None, minimum: Optional[int] = None) -> int:
        value = self.parameters.get(name)
        if value in (None, ""):
            if default is None:
                raise ParseError(f"missing required parameter '{name}'")
            return default
        if isinstance(value, bool):
            raise ParseError(f"'{name}' must be an integer")
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise ParseError(f"'{name}' must be an integer, got {value!r}") from None
        if isinstance(value, float) and value != number:
            raise ParseError(f"'{name}' must be an integer, got {value!r}")
        if minimum is not None and number < minimum:
            raise ParseError(f"'{name}' must be at least {minimum}, got {number}")
        return number

    def optional_integer(self, name: str, minimum: Optional[int] = None) -> Optional[int]:
        if not self.has(name):
            return None
        return self.integer(name, minimum=minimum)

    def ratio(self, name: str):
        if not self.has(name):
            raise ParseError(f"missing required parameter '{name}'")
        return parse_ratio(self.parameters[name])

    def ratio_list(self, name: str, default: str = ""):
        return parse_ratio_list(self.parameters.get(name, default))

    def flag(self, name: str) -> bool:
        value = self.parameters.get(name, False)
        if isinstance(value, str):
            return value.strip().lower() in {"1", "true", "yes", "on"}
        return bool(value)

    def spec(self) -> BallotSpec:
        return BallotSpec(self.integer("a", minimum=0), self.integer("b", minimum=0), self.ratio("mu"))


def parse_ratio_list(value) -> list:
    """Comma-separated ratios ("2,3/2,1.5"), or an already split list."""
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        items = value
    else:
        items = [item for item in str(value).split(",") if item.strip()]
    return [parse_ratio(item) for item in items]


def parse_range(value) -> range:
    """Inclusive integer range "lo:hi", or a single integer."""
    if isinstance(value, int) and not isinstance(value, bool):
        return range(value, value + 1)
    text = str(value or "").strip()
    try:
        if ":" in text:
            lo, hi = (int(part) for part in text.split(":", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise ParseError(f"not an integer range: {value!r} (expected 'lo:hi')") from None
    if lo < 0 or hi < lo:
        raise ParseError(f"range {value!r} must satisfy 0 <= lo <= hi")
    return range(lo, hi + 1)


# ---------------------------------------------------------
# Handlers
# ---------------------------------------------------------
def _exact(request: CommandRequest) -> Dict[str, Any]:
    spec = request.spec()
    counts = count_exact(
        spec,
        budget=request.optional_integer("budget", minimum=0),
        workers=request.optional_integer("workers", minimum=1),
    )
    return {"spec": spec.to_dict(), **counts.to_dict()}


def _bounds(request: CommandRequest) -> Dict[str, Any]:
    spec = request.spec()
    payload: Dict[str, Any] = {"spec": spec.to_dict()}

    notes = []
    for key, compute in (("theorem1", theorem1_bounds), ("theorem2", theorem2_bounds)):
        try:
            payload[key] = compute(spec).to_dict()
        except DomainViolation as e:
            payload[key] = None
            notes.append(str(e))
    if payload["theorem1"] is None and payload["theorem2"] is None:
        raise DomainViolation("; ".join(notes))
    if notes:
        payload["notes"] = notes

    closed = classical_closed_forms(spec)
    payload["closed_forms"] = closed.to_dict() if closed else None

    identity = floor_identity(spec)
    payload["floor_identity"] = {
        "floor_margin_plus_one": identity.lhs,
        "a_minus_floor_mu_b": identity.rhs,
        "boundary_case": identity.boundary_case,
    }

    if request.flag("check"):
        budget = request.optional_integer("budget", minimum=0)
        counts = count_exact(spec, budget=budget)
        payload["oracle"] = counts.to_dict()
        payload["reflection"] = reflection_counting_check(spec, counts).to_dict()
        payload["prepended_vote"] = prepended_vote_check(spec, budget=budget).to_dict()
    return payload


def _takacs(request: CommandRequest) -> Dict[str, Any]:
    spec = request.spec()
    probability = takacs_probability(spec)
    payload = {
        "spec": spec.to_dict(),
        "P": ratio_json(probability),
        "coefficients": takacs_coefficients(spec.mu, spec.b).to_dict()["values"],
    }
    if request.flag("check"):
        (row,) = compare_with_oracle([spec], budget=request.optional_integer("budget", minimum=0))
        payload["oracle_P"] = ratio_json(row.oracle)
        payload["agrees"] = row.agrees
    return payload


def _cycle(request: CommandRequest) -> Dict[str, Any]:
    mu = request.ratio("mu")
    if request.has("sequence"):
        seq = VoteSequence.from_text(str(request.parameters["sequence"]))
        spec = seq.spec(mu)
        return {
            "spec": spec.to_dict(),
            "sequence": str(seq),
            "partial_sums": [ratio_json(t.s_r) for t in partial_tallies(seq, mu)],
            "lattice_path": [list(point) for point in lattice_path(seq)],
            "analysis": analyze_rotations(seq, mu).to_dict(),
            "rotation_counts": rotation_count_bounds_check(seq, spec).to_dict(),
        }
    spec = request.spec()
    report = rotation_average_identity_check(spec, budget=request.optional_integer("budget", minimum=0))
    return {"spec": spec.to_dict(), "averaging": report.to_dict()}


def _weighted(request: CommandRequest) -> Dict[str, Any]:
    wspec = WeightedBallotSpec(
        request.integer("a", minimum=0),
        tuple(request.ratio_list("weights")),
        request.ratio("mu"),
    )
    counts = count_exact_weighted(wspec, budget=request.optional_integer("budget", minimum=0))
    return {
        "spec": wspec.to_dict(),
        **counts.to_dict(),
        "bounds": weighted_bounds(wspec).to_dict(),
    }


def _sample(request: CommandRequest) -> Dict[str, Any]:
    spec = request.spec()
    estimate = sample_probability(
        spec,
        n=request.integer("n", minimum=1),
        seed=request.integer("seed", default=Config.DEFAULT_SEED, minimum=0),
        workers=request.optional_integer("workers", minimum=1),
    )
    return {"spec": spec.to_dict(), **estimate.to_dict()}


def _scan(request: CommandRequest) -> Dict[str, Any]:
    if not request.has("a_range") or not request.has("b_range") or not request.has("mu_set"):
        raise ParseError("scan needs 'a_range', 'b_range' and 'mu_set'")
    rows = tightness_scan(
        parse_range(request.parameters["a_range"]),
        parse_range(request.parameters["b_range"]),
        request.ratio_list("mu_set"),
        budget=request.optional_integer("budget", minimum=0),
        workers=request.optional_integer("workers", minimum=1),
    )
    return {
        "instances": [row.to_dict() for row in rows],
        "summaries": [describe_tightness(row) for row in rows],
    }


HANDLERS: Dict[str, Callable[[CommandRequest], Dict[str, Any]]] = {
    "exact": _exact,
    "bounds": _bounds,
    "takacs": _takacs,
    "cycle": _cycle,
    "weighted": _weighted,
    "sample": _sample,
    "scan": _scan,
}


def execute(request: CommandRequest) -> Dict[str, Any]:
    logger.debug(f"Executing {request.subcommand} with {request.parameters}")
    payload = HANDLERS[request.subcommand](request)
    return {"command": request.subcommand, **payload}


# ---------------------------------------------------------
# Text rendering
# ---------------------------------------------------------
def _r(encoded) -> str:
    if encoded is None:
        return "n/a"
    return format_ratio(ratio_from_json(encoded))


def _interval(pair) -> str:
    if pair is None:
        return "n/a"
    return f"[{_r(pair['lower'])}, {_r(pair['upper'])}]"


def _spec_line(spec: Dict[str, Any]) -> str:
    if "weights" in spec:
        return f"a={spec['a']} weights={{{','.join(spec['weights'])}}} mu={spec['mu']}"
    return f"a={spec['a']} b={spec['b']} mu={spec['mu']}"


def render_text(payload: Dict[str, Any]) -> List[str]:
    command = payload["command"]
    lines: List[str] = []

    if command == "scan":
        return list(payload["summaries"])

    lines.append(_spec_line(payload["spec"]))

    if command in ("exact", "weighted"):
        lines.append(f"P  = {_r(payload['P'])} ({payload['desirable']} of {payload['total']} desirable)")
        lines.append(f"P* = {_r(payload['P_star'])} ({payload['cute']} of {payload['total']} cute)")
        if command == "weighted":
            bounds = payload["bounds"]
            lines.append(f"Bounds on P: {_interval(bounds)}")
            if "integer_upper" in bounds:
                lines.append(f"Integer-weight upper bound: {_r(bounds['integer_upper'])}")

    elif command == "bounds":
        lines.append(f"Theorem 1: {_interval(payload['theorem1'])}")
        lines.append(f"Theorem 2: {_interval(payload['theorem2'])}")
        closed = payload["closed_forms"]
        if closed:
            lines.append(f"Closed forms: P = {_r(closed['P'])}, P* = {_r(closed['P_star'])}")
        for note in payload.get("notes", []):
            lines.append(f"note: {note}")
        if "oracle" in payload:
            oracle = payload["oracle"]
            lines.append(f"Oracle: P = {_r(oracle['P'])}, P* = {_r(oracle['P_star'])}")
            for key in ("undesirable", "ugly"):
                check = payload["reflection"][key]
                status = "pass" if check["holds"] else "FAIL"
                if not check["applicable"]:
                    status = "vacuous"
                lines.append(f"Reflection ({key}): {_r(check['lhs'])} >= {_r(check['rhs'])} {status}")
            prepended = payload["prepended_vote"]
            lines.append(
                f"Prepended vote: cute={prepended['cute']} "
                f"desirable(a+1)={prepended['desirable_with_extra_a']} "
                f"{'pass' if prepended['holds'] else 'FAIL'}"
            )

    elif command == "takacs":
        lines.append(f"P (series) = {_r(payload['P'])}")
        lines.append("C = [" + ", ".join(_r(c) for c in payload["coefficients"]) + "]")
        if "oracle_P" in payload:
            lines.append(f"P (oracle) = {_r(payload['oracle_P'])} agrees={payload['agrees']}")

    elif command == "cycle":
        if "analysis" in payload:
            analysis = payload["analysis"]
            counts = payload["rotation_counts"]
            lines.append(f"Sequence: {payload['sequence']}")
            lines.append(f"Canonical rotation: i={analysis['pivot_index']} -> {analysis['base_sequence']}")
            lines.append(f"Cute offsets: {analysis['cute_rotation_offsets']}")
            lines.append(f"Desirable offsets: {analysis['desirable_rotation_offsets']}")
            lines.append(
                f"Cute rotations: {counts['cute_rotations']} (bound {counts['cute_bound']}); "
                f"desirable rotations: {counts['desirable_rotations']} (bound {counts['desirable_bound']})"
            )
        else:
            report = payload["averaging"]
            n = payload["spec"]["a"] + payload["spec"]["b"]
            lines.append(
                f"Sum of cute rotations = {report['cute_rotation_total']}, "
                f"{n} x #cute = {n * report['cute_sequences']}"
            )
            lines.append(
                f"Sum of desirable rotations = {report['desirable_rotation_total']}, "
                f"{n} x #desirable = {n * report['desirable_sequences']}"
            )
            lines.append("identity holds" if report["passed"] else "identity FAILS")

    elif command == "sample":
        lines.append(
            f"p_hat  = {payload['p_hat']:.6f} +/- {payload['std_err_p']:.6f} "
            f"({payload['desirable_hits']} of {payload['n']})"
        )
        lines.append(
            f"p*_hat = {payload['p_star_hat']:.6f} +/- {payload['std_err_p_star']:.6f} "
            f"({payload['cute_hits']} of {payload['n']})"
        )
        lines.append(f"seed={payload['seed']} workers={payload['workers']}")

    return lines
