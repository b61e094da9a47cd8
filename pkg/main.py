"""
term-reduction - command line entry point.

Reduces the number of terms in systems of equations by pairwise combination
with single-term multipliers, and reports diagnostics on the result.
"""

import argparse
import sys
import traceback
from datetime import datetime
from typing import List, Optional

import config
from cli.commands import cmd_bench, cmd_compare, cmd_diagnose, cmd_reduce
from utils.helpers import configure_logging


def exception_handler(exc_type, exc_value, exc_traceback):
    """
    Global exception handler for uncaught exceptions.
    Prints a short message and appends the traceback to the error log.
    """
    error_msg = "".join(traceback.format_exception(exc_type, exc_value, exc_traceback))
    timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")

    log_file = config.LOG_DIR / config.ERROR_LOG_FILE_NAME
    try:
        config.LOG_DIR.mkdir(parents=True, exist_ok=True)
        with open(log_file, "a", encoding="utf-8") as f:
            f.write(f"\n{'=' * 80}\n")
            f.write(f"Timestamp: {timestamp}\n")
            f.write(f"{'=' * 80}\n")
            f.write(error_msg)
    except OSError:
        sys.stderr.write(error_msg)
        log_file = None

    sys.stderr.write(f"Unexpected error: {exc_value}\n")
    if log_file is not None:
        sys.stderr.write(f"Error log saved to: {log_file}\n")


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to EXIT_USAGE."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(config.EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got '{text}'") from e


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog=config.APP_NAME,
                            description="Term reduction of equation systems")
    parser.add_argument("--version", action="version",
                        version=f"{config.APP_NAME} {config.APP_VERSION}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    reduce = commands.add_parser("reduce", help="reduce a system to a fixed point")
    reduce.add_argument("input", help=f"equation file ({config.EQUATION_FILE_SUFFIX})")
    reduce.add_argument("-o", "--output", help="write the reduced system here (default stdout)")
    reduce.add_argument("--strategy", choices=[config.STRATEGY_FEW, config.STRATEGY_MANY],
                        default=config.DEFAULT_STRATEGY)
    reduce.add_argument("--stats", metavar="PATH", help="write the stats record (JSON line)")
    reduce.add_argument("--log", metavar="PATH", help="write one JSON line per reduction step")
    reduce.add_argument("--oracle-check", action="store_true",
                        help="verify every step against brute force enumeration")
    reduce.add_argument("--max-steps", type=int, default=config.DEFAULT_MAX_STEPS)
    reduce.add_argument("--threads", type=int, default=config.DEFAULT_THREADS)
    reduce.add_argument("--treat-as-unknown", action="append", default=[], metavar="NAME",
                        help="classify a declared parameter as an unknown (repeatable)")
    reduce.set_defaults(handler=cmd_reduce)

    diagnose = commands.add_parser("diagnose", help="occupancy table and ODE-form equations")
    diagnose.add_argument("input")
    diagnose.add_argument("--xlsx", metavar="PATH", help="also export the tables to Excel")
    diagnose.add_argument("--treat-as-unknown", action="append", default=[], metavar="NAME")
    diagnose.set_defaults(handler=cmd_diagnose)

    bench = commands.add_parser("bench", help="timing grid on random polynomials")
    bench.add_argument("--n1", type=_int_list, default=config.BENCH_DEFAULT_N1,
                       help="term counts of the first equation, e.g. 100,1000")
    bench.add_argument("--n2", type=_int_list, default=config.BENCH_DEFAULT_N2)
    bench.add_argument("--reps", type=int, default=config.BENCH_DEFAULT_REPS)
    bench.add_argument("--vars", type=int, default=config.BENCH_DEFAULT_VARS)
    bench.add_argument("--degree", type=int, default=config.BENCH_DEFAULT_DEGREE)
    bench.add_argument("--outcome", choices=[config.OUTCOME_UNSUCCESSFUL,
                                             config.OUTCOME_SUCCESSFUL],
                       default=config.OUTCOME_UNSUCCESSFUL)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--csv", metavar="PATH", help="write the grid here (default stdout)")
    bench.set_defaults(handler=cmd_bench)

    compare = commands.add_parser("compare", help="final sizes under each pairing strategy")
    compare.add_argument("input")
    compare.add_argument("--max-steps", type=int, default=config.DEFAULT_MAX_STEPS)
    compare.add_argument("--treat-as-unknown", action="append", default=[], metavar="NAME")
    compare.add_argument("--csv", metavar="PATH")
    compare.set_defaults(handler=cmd_compare)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    sys.excepthook = exception_handler

    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except Exception:
        exception_handler(*sys.exc_info())
        return config.EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
