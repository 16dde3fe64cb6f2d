"""Command-line entry point: verify suites, replay cases, evaluate bounds on user input."""

import argparse
import logging
import sys
from typing import List, Optional

from errors import BadSpec, RadiusBoundsError
from harness import SUITES, evaluate, run_suite
from matrix_core import BlockMatrix
from models import BoundReport, OutputFormat, RunConfig
from polyroot_bounds import PolySpec
from report_io import emit, load_matrix, load_replay_cases, write_output

logger = logging.getLogger('radius_bounds')

VERSION = "1.0"
LOG_FILE = "radius_bounds.log"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def parse_int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def parse_coefficients(text: str) -> List[complex]:
    """'1,0,1,1' or '1,2-1j,3': highest degree first."""
    try:
        return [complex(part.strip().replace(" ", "")) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated complex coefficients, got '{text}'")


def seed_value(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got '{text}'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radius_bounds",
        description="Numerical radius, spectral radius and Berezin radius bounds with oracle checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--log-file", default=LOG_FILE, help=f"log file (default: {LOG_FILE})")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.HUMAN.value,
                        help="report format (default: human)")
    output.add_argument("--out", help="write the report to this file instead of stdout")
    output.add_argument("--slack", type=float, default=RunConfig.slack_rel,
                        help=f"relative slack for inequality checks (default: {RunConfig.slack_rel:g})")

    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[output], help="run a verification suite")
    verify.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    verify.add_argument("--trials", type=int, default=RunConfig.trials, help="number of random trials")
    verify.add_argument("--seed", type=seed_value, default=RunConfig.master_seed, help="master seed")
    verify.add_argument("--dims", type=parse_int_list, help="comma-separated dimensions to draw from")

    replay = sub.add_parser("replay", parents=[output], help="re-run the cases stored in a JSON report")
    replay.add_argument("file")

    bounds = sub.add_parser("bounds", parents=[output], help="evaluate every block bound on a matrix file")
    bounds.add_argument("--matrix", required=True, help='JSON file {"rows", "cols", "re", "im"}')
    bounds.add_argument("--blocks", required=True, type=parse_int_list,
                        help="comma-separated block sizes, e.g. 2,3")

    poly = sub.add_parser("poly", parents=[output], help="root bounds for a polynomial")
    poly.add_argument("coeffs", type=parse_coefficients,
                      help="comma-separated coefficients, highest degree first, e.g. 1,0,1,1")
    return parser


def configure_logging(log_file: str, verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT,
        filename=log_file
    )


def cmd_verify(args) -> List[BoundReport]:
    cfg = RunConfig(trials=args.trials, master_seed=args.seed, slack_rel=args.slack,
                    dims=tuple(args.dims) if args.dims else None, output_format=args.format)
    return run_suite(args.suite, cfg)


def cmd_replay(args) -> List[BoundReport]:
    cases = load_replay_cases(args.file)
    if not cases:
        raise BadSpec(f"{args.file} has no cases with stored inputs")
    return [evaluate(c["case_id"], c["suite"], c["inputs"], args.slack) for c in cases]


def cmd_bounds(args) -> List[BoundReport]:
    matrix = load_matrix(args.matrix)
    M = BlockMatrix.partition(matrix, args.blocks)
    inputs = {"kind": "block", "blocks": [list(row) for row in M.blocks]}
    return [evaluate("user-matrix", "bounds", inputs, args.slack)]


def cmd_poly(args) -> List[BoundReport]:
    p = PolySpec.from_high_to_low(args.coeffs)
    return [evaluate("user-poly", "poly", {"kind": "poly", "coeffs": list(p.coeffs)}, args.slack)]


COMMANDS = {"verify": cmd_verify, "replay": cmd_replay, "bounds": cmd_bounds, "poly": cmd_poly}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_file, args.verbose)
    logger.info(f"radius_bounds {VERSION}: {args.command}")
    try:
        reports = COMMANDS[args.command](args)
        write_output(emit(reports, args.format), args.out)
    except RadiusBoundsError as e:
        logger.error(f"{args.command} failed: {e}")
        print("--------------------", file=sys.stderr)
        print(f"Error: {e}", file=sys.stderr)
        print("--------------------", file=sys.stderr)
        return EXIT_USAGE
    violated = sum(r.violated for r in reports)
    if violated:
        logger.warning(f"{violated} reports with violated inequalities")
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n--------------------")
        print("Verification terminated.")
        print("--------------------\n")
        sys.exit(130)
