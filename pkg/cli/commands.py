"""
Command implementations for the term-reduction command line tool.

Every command takes the parsed argparse namespace and returns an exit code
(config.EXIT_OK, EXIT_USAGE or EXIT_INTERNAL).
"""

import logging
import sys

import config
from algebra.parser import format_system
from analysis.diagnostics import (
    decoupling_summary,
    occupancy_frame,
    occupancy_table,
    ode_frame,
    scan_odes,
)
from data.export_manager import (
    build_stats,
    export_diagnostics_excel,
    json_line,
    print_frame_csv,
    write_frame_csv,
    write_stats,
    write_step_log,
)
from data.system_manager import SystemManager
from data.system_validator import SystemValidator
from errors import GuardExceededError, InternalConsistencyError, OracleMismatchError
from reduction.scheduler import ReductionStep, compare_strategies, run_reduction
from toolkit.bench import bench_grid, cell_ratio
from toolkit.oracle import oracle_best
from utils.helpers import validate_grid, validate_run_limits

logger = logging.getLogger(__name__)


def _load(args) -> tuple:
    """Load the input file; returns (manager, state) or (None, None) after reporting."""
    manager = SystemManager()
    success, message, _ = manager.load_system(args.input, getattr(args, "treat_as_unknown", ()))
    if not success:
        print(message, file=sys.stderr)
        return None, None
    return manager, manager.build_state(getattr(args, "strategy", config.DEFAULT_STRATEGY))


def _report(success: bool, message: str) -> bool:
    if success:
        logger.info(message)
    else:
        logger.error(message)
    return success


def check_step_against_oracle(step: ReductionStep) -> bool:
    """
    Compare one accepted step with the brute force minimum.

    Returns:
        False if the step was too large to check

    Raises:
        OracleMismatchError: if the engine's count differs from the oracle minimum
    """
    try:
        minimum, _ = oracle_best(step.longer, step.shorter)
    except GuardExceededError:
        logger.debug("Step %d skipped by the oracle check (too large)", step.number)
        return False
    if minimum != step.reduction.predicted_n3:
        raise OracleMismatchError(
            f"Step {step.number}: engine reached {step.reduction.predicted_n3} terms, "
            f"brute force reaches {minimum}"
        )
    return True


def cmd_reduce(args) -> int:
    """Reduce a system to a fixed point and write it in the equation file format."""
    valid, error = validate_run_limits(args.max_steps, args.threads)
    if not valid:
        print(error, file=sys.stderr)
        return config.EXIT_USAGE

    manager, state = _load(args)
    if state is None:
        return config.EXIT_USAGE

    report = SystemValidator(state.table, manager.system.equations, state.rules
                             ).run_quick_validation()
    for issue in report.get_errors() + report.get_warnings():
        logger.warning("%r", issue)

    try:
        run_reduction(state, max_steps=args.max_steps, threads=args.threads)
        if args.oracle_check:
            checked = sum(check_step_against_oracle(step) for step in state.log)
            logger.info("Oracle check passed for %d of %d steps", checked, len(state.log))
    except InternalConsistencyError as e:
        logger.error("Internal consistency failure: %s", e)
        return config.EXIT_INTERNAL

    if args.output:
        if not _report(*manager.save_system(args.output, state)):
            return config.EXIT_USAGE
    else:
        sys.stdout.write(format_system(state.table, state.expressions(), state.rules))

    if args.stats and not _report(*write_stats(args.stats, state)):
        return config.EXIT_USAGE
    if args.log and not _report(*write_step_log(args.log, state.log)):
        return config.EXIT_USAGE
    logger.info(json_line(build_stats(state)))
    return config.EXIT_OK


def _print_section(title: str, body: str):
    print(f"== {title}")
    print(body if body else "(none)")
    print()


def cmd_diagnose(args) -> int:
    """Print validation findings, the occupancy table, ODE findings and decoupling counts."""
    manager, state = _load(args)
    if state is None:
        return config.EXIT_USAGE

    validator = SystemValidator(state.table, manager.system.equations, state.rules,
                                unrewritten=manager.unrewritten_equations())
    occupancy = occupancy_frame(occupancy_table(state))
    odes = ode_frame(scan_odes(state))
    summary = decoupling_summary(state)
    decoupling = summary.as_frame()

    _print_section("Validation", validator.run_full_validation().format())
    _print_section("Occupancy", occupancy.to_string(index=False) if len(occupancy) else "")
    _print_section("ODE-form equations", odes.to_string(index=False) if len(odes) else "")
    _print_section(
        "Decoupling",
        f"equations: {summary.equations}, mean unknowns per equation: "
        f"{summary.mean_unknowns:.2f}, max: {summary.max_unknowns}, "
        f"single-unknown equations: {summary.single_unknown_equations}\n"
        + (decoupling.to_string(index=False) if len(decoupling) else ""),
    )

    if args.xlsx and not _report(*export_diagnostics_excel(args.xlsx, occupancy, odes,
                                                           decoupling)):
        return config.EXIT_USAGE
    return config.EXIT_OK


def cmd_bench(args) -> int:
    """Run the timing grid and write it as CSV."""
    valid, error = validate_grid(args.n1, args.n2, args.reps, args.vars, args.degree)
    if not valid:
        print(error, file=sys.stderr)
        return config.EXIT_USAGE

    frame = bench_grid(args.n1, args.n2, reps=args.reps, n_vars=args.vars, degree=args.degree,
                       outcome=args.outcome, seed=args.seed)
    if args.csv:
        if not _report(*write_frame_csv(args.csv, frame)):
            return config.EXIT_USAGE
    else:
        print_frame_csv(frame, sys.stdout)

    cells = set(zip(frame["n1"], frame["n2"]))
    if {(1000, 1000), (100, 1000)} <= cells:
        logger.info("t(1000,1000) / t(100,1000) = %.2f",
                    cell_ratio(frame, (1000, 1000), (100, 1000)))
    return config.EXIT_OK


def cmd_compare(args) -> int:
    """Reduce copies of the system with every strategy and tabulate the outcome."""
    _, state = _load(args)
    if state is None:
        return config.EXIT_USAGE

    try:
        frame = compare_strategies(state, max_steps=args.max_steps)
    except InternalConsistencyError as e:
        logger.error("Internal consistency failure: %s", e)
        return config.EXIT_INTERNAL

    print(frame.to_string(index=False))
    if args.csv and not _report(*write_frame_csv(args.csv, frame)):
        return config.EXIT_USAGE
    return config.EXIT_OK
