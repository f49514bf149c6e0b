"""
Command-line surface.

    python -m ballot exact --a 5 --b 2 --mu 3/2 --json
    python -m ballot bounds --a 5 --b 2 --mu 3/2 --check
    python -m ballot scan --a-range 1:8 --b-range 0:4 --mu-set 1,3/2,2 --json

Exit status is 0 on success, 2 on a ParseError and 1 on any other error; the
error name and message go to stderr.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, TextIO

from ballot.config import configure_logging
from ballot.errors import BallotError, ParseError
from ballot.services.commands import CommandRequest, execute, render_text

logger = logging.getLogger("BallotCLI")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _common(parser: argparse.ArgumentParser, *, need_b: bool = True, need_mu: bool = True):
    parser.add_argument("--a", help="number of A-votes")
    if need_b:
        parser.add_argument("--b", help="number of B-votes")
    if need_mu:
        parser.add_argument("--mu", help="ratio mu as p/q, an integer or a finite decimal")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--budget", help="enumeration budget for this run (default: BALLOT_ENUMERATION_BUDGET)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ballot", description="Exact generalized ballot problem toolkit")
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="logging level for diagnostics on stderr",
    )
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("exact", help="exact P and P* by enumeration")
    _common(p)
    p.add_argument("--workers", help="processes for the enumeration")

    p = sub.add_parser("bounds", help="Theorem 1 and 2 bounds and closed forms")
    _common(p)
    p.add_argument("--check", action="store_true", help="also run the oracle and counting checks")

    p = sub.add_parser("takacs", help="P from Takács' series")
    _common(p)
    p.add_argument("--check", action="store_true", help="compare against the enumeration oracle")

    p = sub.add_parser("cycle", help="rotation analysis of a sequence, or the averaging identity")
    _common(p)
    p.add_argument("--sequence", help="vote sequence over {A, B}, e.g. AABAB")

    p = sub.add_parser("weighted", help="weighted B-votes: exact P and bounds")
    _common(p, need_b=False)
    p.add_argument("--weights", default="", help="comma-separated ratios, e.g. 2,3/2")

    p = sub.add_parser("sample", help="sampling estimate of P and P*")
    _common(p)
    p.add_argument("--n", help="number of samples")
    p.add_argument("--seed", help="master seed")
    p.add_argument("--workers", help="sampling workers (part of the reproducibility contract)")

    p = sub.add_parser("scan", help="tightness scan over a grid, one JSON object per line")
    p.add_argument("--a-range", required=True, help="inclusive range lo:hi")
    p.add_argument("--b-range", required=True, help="inclusive range lo:hi")
    p.add_argument("--mu-set", required=True, help="comma-separated ratios")
    p.add_argument("--json", action="store_true")
    p.add_argument("--budget")
    p.add_argument("--workers")

    return parser


def parse_request(argv: List[str]) -> CommandRequest:
    args = vars(build_parser().parse_args(argv))
    subcommand = args.pop("subcommand")
    output_mode = "json" if args.pop("json", False) else "text"
    return CommandRequest(subcommand, args, output_mode)


def run(request: CommandRequest, out: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    logger.info(f"Running {request.subcommand} ({request.output_mode} output)")
    payload = execute(request)
    if request.output_mode == "json":
        if request.subcommand == "scan":
            for row in payload["instances"]:
                out.write(json.dumps(row) + "\n")
        else:
            out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for line in render_text(payload):
            out.write(line + "\n")
    return 0


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    err = sys.stderr if err is None else err

    try:
        request = parse_request(argv)
        configure_logging(request.parameters.pop("log_level"))
        return run(request, out)
    except BallotError as e:
        err.write(f"{e.name}: {e}\n")
        return 2 if isinstance(e, ParseError) else 1
