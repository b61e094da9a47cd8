"""
Linear view of an expression in its kernel variables.

Every expression is homogeneous and linear in its kernel monomials v_j (with
v_0 = 1 for terms free of unknowns); the coefficient of each v_j is a sum of
parametric terms. Quotients are only ever formed between coefficients of the
same v_j, which keeps every multiplier free of unknowns.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from algebra.expressions import Expression, Monomial, Term

Coefficient = Tuple[Fraction, Monomial]


@dataclass(frozen=True)
class KernelPartition:
    """Kernel monomial -> parametric (coefficient, monomial) pairs, in canonical order."""

    entries: Mapping[Monomial, Tuple[Coefficient, ...]]

    @property
    def sizes(self) -> Dict[Monomial, int]:
        """n_ij: term count of each kernel's coefficient."""
        return {kernel: len(pairs) for kernel, pairs in self.entries.items()}

    @property
    def kernels(self) -> Tuple[Monomial, ...]:
        return tuple(self.entries)

    def size(self, kernel: Monomial) -> int:
        return len(self.entries.get(kernel, ()))

    def term_count(self) -> int:
        return sum(len(pairs) for pairs in self.entries.values())

    def coefficient(self, kernel: Monomial) -> Expression:
        """The coefficient expression of one kernel variable."""
        return Expression(Term(c, m) for c, m in self.entries.get(kernel, ()))

    def reassemble(self) -> Expression:
        return Expression(
            Term(c, m, kernel) for kernel, pairs in self.entries.items() for c, m in pairs
        )


def partition(expression: Expression) -> KernelPartition:
    """Group the terms of a normalized expression by kernel monomial."""
    entries: Dict[Monomial, list] = {}
    for term in expression:
        entries.setdefault(term.kernel, []).append((term.coefficient, term.parametric))
    return KernelPartition({kernel: tuple(pairs) for kernel, pairs in entries.items()})


def shared_quotient_work(p1: KernelPartition, p2: KernelPartition) -> int:
    """Number of quotients the per-kernel method computes: sum over shared kernels of n_1j*n_2j."""
    return sum(len(pairs) * p2.size(kernel) for kernel, pairs in p1.entries.items())
