"""
Brute force reference for single-term-multiplier combinations of two equations.

Every pair of terms with the same kernel fixes one candidate combination; the
oracle forms each candidate with plain expression arithmetic and reports the
shortest result. It shares no counting logic with the quotient engine.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import config
from algebra.expressions import Expression, Term
from errors import GuardExceededError


@dataclass(frozen=True)
class OracleWitness:
    """Multipliers realizing the minimum: multiplier_e1 * e1 - multiplier_e2 * e2."""

    multiplier_e1: Term
    multiplier_e2: Term
    result: Expression


def _candidate(e1: Expression, e2: Expression, t1: Term, t2: Term) -> OracleWitness:
    ratio = t1.coefficient / t2.coefficient
    common = t1.parametric.gcd(t2.parametric)
    left = Term(ratio.denominator, t2.parametric / common)
    right = Term(ratio.numerator, t1.parametric / common)
    result = e1 * Expression([left]) - e2 * Expression([right])
    return OracleWitness(left, right, result)


def oracle_best(e1: Expression, e2: Expression) -> Tuple[int, Optional[OracleWitness]]:
    """
    Shortest term count reachable from e1 by one combination with e2.

    The untouched e1 is a candidate too, so a result of len(e1) with no
    witness means no combination is shorter.

    Raises:
        GuardExceededError: if len(e1) * len(e2) exceeds ORACLE_MAX_PRODUCT
    """
    work = len(e1) * len(e2)
    if work > config.ORACLE_MAX_PRODUCT:
        raise GuardExceededError(
            f"Oracle needs {work} combinations, limit is {config.ORACLE_MAX_PRODUCT}"
        )
    best_count, best_witness = len(e1), None
    for t1 in e1:
        for t2 in e2:
            if t1.kernel != t2.kernel:
                continue
            witness = _candidate(e1, e2, t1, t2)
            if len(witness.result) < best_count:
                best_count, best_witness = len(witness.result), witness
    return best_count, best_witness
