"""
Diagnostics for reduced systems: occupancy tables, ODE-form equations and
decoupling statistics.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from algebra.expressions import AtomKind, Expression
from reduction.scheduler import SystemState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OccupancyRow:
    """One equation of the occupancy table."""

    index: int
    terms: int
    unknowns: Tuple[str, ...]


@dataclass(frozen=True)
class OdeFinding:
    """An equation that is an ODE in `variable` for the derivative d(unknown, base)."""

    index: int
    unknown: str
    base: Tuple[str, ...]
    variable: str

    @property
    def base_text(self) -> str:
        if not self.base:
            return self.unknown
        return f"d({self.unknown},{','.join(self.base)})"


@dataclass(frozen=True)
class DecouplingSummary:
    """How strongly the unknowns of a system are coupled through its equations."""

    equations: int
    mean_unknowns: float
    max_unknowns: int
    single_unknown_equations: int
    occurrences: Dict[str, int]

    def as_frame(self) -> pd.DataFrame:
        """Per-unknown equation counts, most widely used unknown first."""
        frame = pd.DataFrame(sorted(self.occurrences.items()), columns=["unknown", "equations"])
        return frame.sort_values(["equations", "unknown"], ascending=[False, True],
                                 ignore_index=True)


def occupancy_table(state: SystemState) -> List[OccupancyRow]:
    """One row per live equation, with its term count and the unknowns it involves."""
    return [OccupancyRow(index, len(equation), equation.unknown_names())
            for index, equation in state.equations.items()]


def occupancy_frame(rows: List[OccupancyRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [{"equation": row.index, "terms": row.terms, "unknowns": ", ".join(row.unknowns)}
         for row in rows],
        columns=["equation", "terms", "unknowns"],
    )


def detect_ode(expression: Expression, index: int = 0) -> Optional[OdeFinding]:
    """
    Check whether an equation is an ODE for a single derivative of one unknown.

    All kernel atoms must be the unknown itself or derivatives of it, and their
    variable multisets must differ from a common base only in the count of one
    variable. Candidate variables are tried in alphabetical order.

    Args:
        expression: Normalized equation
        index: Equation id recorded in the finding

    Returns:
        OdeFinding, or None if the equation has no such structure
    """
    atoms = expression.kernel_atoms()
    if not atoms:
        return None
    if any(atom.kind not in (AtomKind.UNKNOWN, AtomKind.DERIVATIVE) for atom in atoms):
        return None
    names = {atom.name for atom in atoms}
    if len(names) != 1:
        return None

    multisets = [atom.variables for atom in atoms]
    for variable in sorted({v for variables in multisets for v in variables}):
        reduced = {tuple(v for v in variables if v != variable) for variables in multisets}
        if len(reduced) == 1:
            return OdeFinding(index, names.pop(), reduced.pop(), variable)
    return None


def scan_odes(state: SystemState) -> List[OdeFinding]:
    findings = []
    for index, equation in state.equations.items():
        finding = detect_ode(equation, index)
        if finding is not None:
            logger.debug("Equation %d is an ODE in %s for %s", index, finding.variable,
                         finding.base_text)
            findings.append(finding)
    return findings


def ode_frame(findings: List[OdeFinding]) -> pd.DataFrame:
    return pd.DataFrame(
        [{"equation": f.index, "unknown": f.unknown, "base": f.base_text, "variable": f.variable}
         for f in findings],
        columns=["equation", "unknown", "base", "variable"],
    )


def decoupling_summary(state: SystemState) -> DecouplingSummary:
    """Summarize unknowns per equation and equations per unknown."""
    rows = occupancy_table(state)
    counts = np.array([len(row.unknowns) for row in rows], dtype=int)
    occurrences: Dict[str, int] = {name: 0 for name in state.table.unknowns}
    for row in rows:
        for name in row.unknowns:
            occurrences[name] = occurrences.get(name, 0) + 1
    return DecouplingSummary(
        equations=len(rows),
        mean_unknowns=float(counts.mean()) if counts.size else 0.0,
        max_unknowns=int(counts.max()) if counts.size else 0,
        single_unknown_equations=int(np.count_nonzero(counts == 1)),
        occurrences=occurrences,
    )
