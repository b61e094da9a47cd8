"""
Exception hierarchy for the term reduction toolkit.
"""

from typing import Optional


class TermReductionError(Exception):
    """Base class for all errors raised by this package."""


class ExpressionError(TermReductionError, ValueError):
    """Invalid expression construction or arithmetic request."""


class EquationSyntaxError(ExpressionError):
    """Malformed equation file content, with a 1-based line and column."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.__str__())

    def __str__(self):
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class UndeclaredAtomError(EquationSyntaxError):
    """A bare name that is not declared as independent, unknown or parameter."""


class DerivativeError(EquationSyntaxError):
    """A derivative of something other than an unknown, or with bad variables."""


class RuleError(EquationSyntaxError):
    """A rewrite rule that cannot be applied safely."""


class RewriteLimitError(ExpressionError):
    """Rewrite rules did not reach a fixpoint within the configured passes."""


class MultiplierError(ExpressionError):
    """A multiplier that is zero or contains kernel atoms."""


class InternalConsistencyError(TermReductionError):
    """A predicted term count disagrees with the computed result."""


class OracleMismatchError(InternalConsistencyError):
    """The engine and the brute force oracle disagree."""


class GuardExceededError(TermReductionError, ValueError):
    """An input is too large for brute force enumeration."""


class GenerationError(TermReductionError, ValueError):
    """A random generation request that cannot be satisfied."""
