"""
Pairwise length reduction of two equations.

For a pair (E1 longer, E2 shorter) every term of E1 is divided by every term
of E2 that has the same kernel. Simplified quotients are grouped into classes
that agree up to a numerical factor. Choosing quotient q_ij from class c_i and
forming

    E3 = denominator(q_ij) * E1 - numerator(q_ij) * E2

gives n3 = n1 + n2 - m_ij - M_i terms, so a reduction needs m_ij + M_i > n2.

Pruning: while scanning, B_j(w) bounds the cancellations still to be found.
Members with M_k + m_kl + 2*B_j(w) <= n2 are dropped, no new classes are
admitted once 2*B_j(w) <= n2, and the scan stops if the table is then empty.
The scan never stops at the first reducing quotient; the best one is chosen
from the completed table.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from algebra.expressions import Expression, Monomial, Term, multiply_by_term, subtract
from algebra.linearizer import KernelPartition, partition
from errors import InternalConsistencyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuotientKey:
    """Sign-free class identity numerator/denominator, with no common atom powers."""

    numerator: Monomial
    denominator: Monomial

    @classmethod
    def of(cls, top: Monomial, bottom: Monomial) -> "QuotientKey":
        numerator, denominator = top.coprime_ratio(bottom)
        return cls(numerator, denominator)

    @property
    def degree(self) -> int:
        return self.numerator.degree + self.denominator.degree

    @property
    def sort_key(self) -> tuple:
        return (self.numerator.sort_key, self.denominator.sort_key)

    def __str__(self):
        return f"{self.numerator}/{self.denominator}"


@dataclass
class QuotientClass:
    """One class c_i: member rational -> multiplicity m_ij, and the class total M_i."""

    key: QuotientKey
    members: Dict[Fraction, int] = field(default_factory=dict)
    total: int = 0

    def record(self, value: Fraction, admit: bool = True):
        self.total += 1
        if admit:
            self.members[value] = self.members.get(value, 0) + 1


@dataclass
class QuotientTable:
    """The list L of quotient classes for one ordered pair."""

    classes: Dict[QuotientKey, QuotientClass]
    n1: int
    n2: int
    raw_quotients: int = 0
    aborted: bool = False

    def get(self, key: QuotientKey) -> Optional[QuotientClass]:
        return self.classes.get(key)

    def __len__(self):
        return len(self.classes)


@dataclass(frozen=True)
class Reduction:
    """The chosen quotient and the resulting multipliers for one pair."""

    value: Fraction
    key: QuotientKey
    m: int
    M: int
    n1: int
    n2: int

    @property
    def predicted_n3(self) -> int:
        return self.n1 + self.n2 - self.m - self.M

    @property
    def multiplier_for_e1(self) -> Term:
        """denominator(q): multiplies the longer equation."""
        return Term(Fraction(self.value.denominator), self.key.denominator)

    @property
    def multiplier_for_e2(self) -> Term:
        """numerator(q): multiplies the shorter equation."""
        return Term(Fraction(self.value.numerator), self.key.numerator)

    @property
    def quotient_text(self) -> str:
        return f"{self.value}*{self.key}"


def processing_order(p1: KernelPartition, p2: KernelPartition) -> List[Monomial]:
    """Shared kernels by descending min(n_1j, n_2j); ties keep E1's canonical order."""
    shared = [kernel for kernel in p1.kernels if p2.size(kernel)]
    return sorted(shared, key=lambda k: -min(p1.size(k), p2.size(k)))


def precheck(p1: KernelPartition, p2: KernelPartition, n2: int) -> bool:
    """False when sum_j 2*min(n_1j, n_2j) <= n2, i.e. no reduction is possible."""
    potential = sum(2 * min(len(pairs), p2.size(kernel)) for kernel, pairs in p1.entries.items())
    return potential > n2


def bound_B(p1: KernelPartition, p2: KernelPartition, kernel: Monomial, processed: int,
            order: Optional[Sequence[Monomial]] = None) -> int:
    """
    Upper bound B_j(w) on the cancellations still to be found.

    Args:
        p1, p2: Partitions of the longer and shorter equation
        kernel: The kernel v_j currently being scanned
        processed: w, the number of E1 terms of v_j already processed
        order: Kernel processing order (defaults to processing_order)

    Returns:
        min(n_1j - w, n_2j) + sum over later kernels of min(n_1i, n_2i)
    """
    order = list(order) if order is not None else processing_order(p1, p2)
    position = order.index(kernel)
    current = min(p1.size(kernel) - processed, p2.size(kernel))
    later = sum(min(p1.size(k), p2.size(k)) for k in order[position + 1:])
    return current + later


def _sweep(table: QuotientTable, dropped: Set[Tuple[QuotientKey, Fraction]],
           dead: Set[QuotientKey], bound: int):
    for key in list(table.classes):
        quotient_class = table.classes[key]
        for value, count in list(quotient_class.members.items()):
            if quotient_class.total + count + 2 * bound <= table.n2:
                del quotient_class.members[value]
                dropped.add((key, value))
        if not quotient_class.members:
            del table.classes[key]
            dead.add(key)


def collect_quotients(p1: KernelPartition, p2: KernelPartition, prune: bool = True
                      ) -> QuotientTable:
    """
    Build the quotient table for the pair, kernel by kernel.

    Args:
        p1: Partition of the longer equation E1
        p2: Partition of the shorter equation E2
        prune: Apply the B_j(w) bound (same best reduction, fewer updates)

    Returns:
        QuotientTable; `raw_quotients` counts the quotients actually computed.
    """
    n1, n2 = p1.term_count(), p2.term_count()
    table = QuotientTable(classes={}, n1=n1, n2=n2)
    order = processing_order(p1, p2)
    mins = [min(p1.size(k), p2.size(k)) for k in order]
    suffix = [sum(mins[i + 1:]) for i in range(len(order))]
    dropped: Set[Tuple[QuotientKey, Fraction]] = set()
    dead: Set[QuotientKey] = set()
    admit_new = True

    for position, kernel in enumerate(order):
        shorter = p2.entries[kernel]
        n2j = len(shorter)
        for processed, (c1, m1) in enumerate(p1.entries[kernel]):
            if prune:
                bound = min(len(p1.entries[kernel]) - processed, n2j) + suffix[position]
                _sweep(table, dropped, dead, bound)
                admit_new = 2 * bound > n2
                if not admit_new and not table.classes:
                    table.aborted = True
                    logger.debug("Quotient scan aborted: no class can reach %d", n2 + 1)
                    return table
            seen_keys: Set[QuotientKey] = set()
            for c2, m2 in shorter:
                table.raw_quotients += 1
                key = QuotientKey.of(m1, m2)
                value = c1 / c2
                # One E1 term meets each class at most once (like terms are merged).
                assert key not in seen_keys, "duplicate class hit from one term"
                seen_keys.add(key)
                if key in dead:
                    continue
                quotient_class = table.classes.get(key)
                if quotient_class is None:
                    if not admit_new:
                        continue
                    quotient_class = table.classes[key] = QuotientClass(key)
                quotient_class.record(value, admit=(key, value) not in dropped)
    return table


def _candidate_rank(table: QuotientTable, key: QuotientKey, value: Fraction, count: int):
    quotient_class = table.classes[key]
    return (-(count + quotient_class.total), key.degree, key.sort_key, abs(value), value)


def best_reduction(table: QuotientTable) -> Optional[Reduction]:
    """
    Pick the quotient maximizing m + M, subject to m + M > n2.

    Ties: lower total degree of the key, then canonical key order, then
    smaller absolute rational, then the rational itself.
    """
    best = None
    best_rank = None
    for key, quotient_class in table.classes.items():
        for value, count in quotient_class.members.items():
            if count + quotient_class.total <= table.n2:
                continue
            rank = _candidate_rank(table, key, value, count)
            if best_rank is None or rank < best_rank:
                best_rank = rank
                best = Reduction(value=value, key=key, m=count, M=quotient_class.total,
                                 n1=table.n1, n2=table.n2)
    return best


def combine(e1: Expression, e2: Expression, reduction: Reduction) -> Expression:
    """(c_d * denominator) * e1 - (c_n * numerator) * e2, without count checks."""
    left = reduction.multiplier_for_e1
    right = reduction.multiplier_for_e2
    return subtract(multiply_by_term(e1, left.coefficient, left.parametric),
                    multiply_by_term(e2, right.coefficient, right.parametric))


def apply_reduction(e1: Expression, e2: Expression, reduction: Reduction) -> Expression:
    """
    Form E3 and check that its length is the predicted n1 + n2 - m - M.

    Raises:
        InternalConsistencyError: if the term count differs from the prediction
    """
    result = combine(e1, e2, reduction)
    if len(result) != reduction.predicted_n3:
        raise InternalConsistencyError(
            f"Quotient {reduction.quotient_text} predicted {reduction.predicted_n3} terms "
            f"but produced {len(result)}"
        )
    return result


def evaluate_pair(e1: Expression, e2: Expression,
                  p1: Optional[KernelPartition] = None, p2: Optional[KernelPartition] = None,
                  prune: bool = True) -> Optional[Reduction]:
    """Run precheck, quotient collection and selection for one ordered pair."""
    p1 = p1 if p1 is not None else partition(e1)
    p2 = p2 if p2 is not None else partition(e2)
    if not len(e1) or not len(e2):
        return None
    if not precheck(p1, p2, len(e2)):
        return None
    return best_reduction(collect_quotients(p1, p2, prune=prune))
