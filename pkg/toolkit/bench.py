"""
Timing grid for pairwise reduction on random polynomials.

Each cell draws pairs with the requested outcome (unsuccessful: independent
random polynomials; successful: constructed reducible pairs), times the full
pair evaluation and reports the median over repetitions.
"""

import logging
import time
from typing import Iterable, Optional

import numpy as np
import pandas as pd

import config
from algebra.expressions import Expression
from reduction.quotient_engine import evaluate_pair
from toolkit.random_polys import random_poly, reducible_pair

logger = logging.getLogger(__name__)


def _draw_pair(rng: np.random.Generator, n1: int, n2: int, n_vars: int, degree: int,
               outcome: str):
    """Draw (longer, shorter) whose evaluation has the requested outcome, or None."""
    want_success = outcome == config.OUTCOME_SUCCESSFUL
    for _ in range(config.BENCH_MAX_REGENERATIONS):
        if want_success:
            base, target = reducible_pair(rng, n1, n_vars, degree, n_base=n2)
        else:
            target = random_poly(rng, n1, n_vars, degree)
            base = random_poly(rng, n2, n_vars, degree)
        pair = (target, base) if len(target) >= len(base) else (base, target)
        if (evaluate_pair(*pair) is not None) == want_success:
            return pair
    return None


def time_pair(longer: Expression, shorter: Expression) -> float:
    """Wall time in milliseconds of one complete pair evaluation."""
    start = time.perf_counter()
    evaluate_pair(longer, shorter)
    return (time.perf_counter() - start) * 1000.0


def bench_grid(n1_values: Iterable[int] = config.BENCH_DEFAULT_N1,
               n2_values: Iterable[int] = config.BENCH_DEFAULT_N2,
               reps: int = config.BENCH_DEFAULT_REPS,
               n_vars: int = config.BENCH_DEFAULT_VARS,
               degree: int = config.BENCH_DEFAULT_DEGREE,
               outcome: str = config.OUTCOME_UNSUCCESSFUL,
               seed: Optional[int] = None) -> pd.DataFrame:
    """
    Median evaluation time for every (n1, n2) cell of the grid.

    Args:
        n1_values: Term counts of the first equation
        n2_values: Term counts of the second equation
        reps: Repetitions per cell, each on a freshly drawn pair
        n_vars: Number of independents
        degree: Maximum total degree
        outcome: OUTCOME_SUCCESSFUL or OUTCOME_UNSUCCESSFUL
        seed: Seed for reproducible pair generation

    Returns:
        DataFrame with columns BENCH_CSV_COLUMNS; median_ms is NaN for cells where
        no pair with the requested outcome could be drawn
    """
    rng = np.random.default_rng(seed)
    rows = []
    for n1 in n1_values:
        for n2 in n2_values:
            timings = []
            for _ in range(reps):
                pair = _draw_pair(rng, n1, n2, n_vars, degree, outcome)
                if pair is None:
                    logger.warning("No %s pair found for %d x %d terms", outcome, n1, n2)
                    continue
                timings.append(time_pair(*pair))
            median = float(np.median(timings)) if timings else float("nan")
            logger.info("Cell %d x %d (%s): median %.3f ms over %d runs", n1, n2, outcome,
                        median, len(timings))
            rows.append({"n1": n1, "n2": n2, "vars": n_vars, "degree": degree,
                         "outcome": outcome, "median_ms": round(median, 3),
                         "reps": len(timings)})
    return pd.DataFrame(rows, columns=config.BENCH_CSV_COLUMNS)


def cell_ratio(frame: pd.DataFrame, numerator: tuple, denominator: tuple) -> float:
    """Ratio of median times between two (n1, n2) cells."""
    def median_of(cell):
        n1, n2 = cell
        match = frame[(frame["n1"] == n1) & (frame["n2"] == n2)]
        return float(match["median_ms"].iloc[0])

    return median_of(numerator) / median_of(denominator)
