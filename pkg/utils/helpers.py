"""
Utility functions for the term reduction command line tool.
"""

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import config


def configure_logging(verbose: bool = False, log_dir: Optional[Path] = None) -> Optional[Path]:
    """
    Install a stderr handler and a file handler on the root logger.

    Args:
        verbose: Log DEBUG records to stderr (INFO otherwise)
        log_dir: Directory of the log file (defaults to config.LOG_DIR)

    Returns:
        Path of the log file, or None if the directory could not be created
    """
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)
    for handler in list(root.handlers):
        if getattr(handler, "_term_reduction", False):
            root.removeHandler(handler)
            handler.close()

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(logging.DEBUG if verbose else logging.INFO)
    console.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    console._term_reduction = True
    root.addHandler(console)

    log_dir = Path(log_dir) if log_dir is not None else config.LOG_DIR
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
    except OSError:
        root.warning("Cannot create log directory %s; file logging disabled", log_dir)
        return None
    log_file = log_dir / config.LOG_FILE_NAME
    file_handler = logging.FileHandler(log_file, encoding="utf-8")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(config.LOG_FORMAT))
    file_handler._term_reduction = True
    root.addHandler(file_handler)
    return log_file


def validate_grid(n1_values: Sequence[int], n2_values: Sequence[int], reps: int,
                  n_vars: int, degree: int) -> tuple[bool, str]:
    """
    Validates benchmark grid arguments.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not n1_values or not n2_values:
        return False, "The grid needs at least one value for each equation size."

    if any(n < 1 for n in list(n1_values) + list(n2_values)):
        return False, "Term counts must be positive (1 or greater)."

    if reps < 1:
        return False, "Repetitions must be positive (1 or greater)."

    if n_vars < 1:
        return False, "The number of variables must be positive (1 or greater)."

    if degree < 0:
        return False, "The degree must not be negative."

    return True, ""


def validate_run_limits(max_steps: Optional[int], threads: int) -> tuple[bool, str]:
    """
    Validates the step limit and the thread count of a reduction run.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if max_steps is not None and max_steps < 0:
        return False, "--max-steps must not be negative."

    if threads < 1:
        return False, "--threads must be positive (1 or greater)."

    return True, ""
