"""
System validation module for checking an equation system before reduction.
"""

from typing import List, Optional, Sequence

import config
from algebra.expressions import Expression, RewriteRule, Term, VariableTable


class ValidationIssue:
    """Represents a single finding about an equation system."""

    def __init__(self, severity: str, category: str, message: str,
                 location: Optional[str] = None, suggestion: Optional[str] = None):
        """
        Initialize a validation issue.

        Args:
            severity: Issue severity level ("ERROR", "WARNING", "INFO")
            category: Issue category (e.g., "Redundancy", "Declarations")
            message: Description of the issue
            location: Location reference (e.g., "equation 3", "rule 1")
            suggestion: Suggested fix for the issue
        """
        self.severity = severity
        self.category = category
        self.message = message
        self.location = location
        self.suggestion = suggestion

    def __repr__(self):
        loc = f" at {self.location}" if self.location else ""
        return f"[{self.severity}] {self.category}: {self.message}{loc}"


class ValidationReport:
    """Contains all validation issues found in a system."""

    def __init__(self):
        self.issues: List[ValidationIssue] = []

    def add_issue(self, severity: str, category: str, message: str,
                  location: Optional[str] = None, suggestion: Optional[str] = None):
        self.issues.append(ValidationIssue(severity, category, message, location, suggestion))

    def _with(self, severity: str) -> List[ValidationIssue]:
        return [issue for issue in self.issues if issue.severity == severity]

    def has_errors(self) -> bool:
        return bool(self.get_errors())

    def has_warnings(self) -> bool:
        return bool(self.get_warnings())

    def has_issues(self) -> bool:
        return len(self.issues) > 0

    def get_errors(self) -> List[ValidationIssue]:
        return self._with(config.VALIDATION_SEVERITY_ERROR)

    def get_warnings(self) -> List[ValidationIssue]:
        return self._with(config.VALIDATION_SEVERITY_WARNING)

    def get_infos(self) -> List[ValidationIssue]:
        return self._with(config.VALIDATION_SEVERITY_INFO)

    def get_issue_count(self) -> dict:
        """Get count of issues by severity."""
        return {
            "errors": len(self.get_errors()),
            "warnings": len(self.get_warnings()),
            "infos": len(self.get_infos()),
        }

    def format(self) -> str:
        """Human readable listing, one issue per line with its suggestion."""
        lines = []
        for issue in self.issues:
            lines.append(repr(issue))
            if issue.suggestion:
                lines.append(f"    -> {issue.suggestion}")
        return "\n".join(lines)


def _proportional(a: Expression, b: Expression) -> bool:
    """True if a = c*m*b for a nonzero rational c and a parametric monomial m."""
    if len(a) != len(b) or not len(a) or set(a.kernels()) != set(b.kernels()):
        return False
    first = a.terms[0]
    for term in b:
        if term.kernel != first.kernel:
            continue
        ratio = first.coefficient / term.coefficient
        common = first.parametric.gcd(term.parametric)
        left = Expression([Term(ratio.denominator, term.parametric / common)])
        right = Expression([Term(ratio.numerator, first.parametric / common)])
        if (a * left - b * right).is_zero:
            return True
    return False


class SystemValidator:
    """Validates a parsed equation system before reduction."""

    def __init__(self, table: VariableTable, equations: Sequence[Expression],
                 rules: Sequence[RewriteRule] = (),
                 unrewritten: Optional[Sequence[Expression]] = None):
        """
        Initialize validator with a parsed system.

        Args:
            table: Variable classification
            equations: Normalized equations (rules applied)
            rules: Rewrite rules of the system
            unrewritten: The same equations parsed without rules; enables the
                check for rules that never fire
        """
        self.table = table
        self.equations = list(equations)
        self.rules = list(rules)
        self.unrewritten = list(unrewritten) if unrewritten is not None else None

    def run_quick_validation(self) -> ValidationReport:
        """
        Run the checks that matter before a reduction run.

        Returns:
            ValidationReport with quick check results
        """
        report = ValidationReport()
        self._check_empty(report)
        self._check_zero_equations(report)
        self._check_parametric_equations(report)
        self._check_proportional_equations(report, quick=True)
        return report

    def run_full_validation(self) -> ValidationReport:
        """
        Run every check, including declaration and rule usage.

        Returns:
            ValidationReport with full check results
        """
        report = ValidationReport()
        self._check_empty(report)
        self._check_zero_equations(report)
        self._check_parametric_equations(report)
        self._check_proportional_equations(report, quick=False)
        self._check_single_term_equations(report)
        self._check_unused_names(report)
        self._check_unused_rules(report)
        return report

    def _check_empty(self, report: ValidationReport):
        if not self.equations:
            report.add_issue(
                config.VALIDATION_SEVERITY_WARNING,
                "Structure",
                "The system has no equations",
                suggestion="Add 'eq' lines to the file",
            )

    def _check_zero_equations(self, report: ValidationReport):
        for index, equation in enumerate(self.equations):
            if equation.is_zero:
                report.add_issue(
                    config.VALIDATION_SEVERITY_WARNING,
                    "Redundancy",
                    "Equation is identically zero and will be removed",
                    location=f"equation {index}",
                    suggestion="Delete the equation or check the rewrite rules",
                )

    def _check_parametric_equations(self, report: ValidationReport):
        for index, equation in enumerate(self.equations):
            if not equation.is_zero and equation.is_parametric:
                report.add_issue(
                    config.VALIDATION_SEVERITY_ERROR,
                    "Consistency",
                    f"Equation 0 = {equation} contains no unknowns",
                    location=f"equation {index}",
                    suggestion="The system is inconsistent unless this holds identically",
                )

    def _check_proportional_equations(self, report: ValidationReport, quick: bool = True):
        found = 0
        for i, a in enumerate(self.equations):
            for j in range(i + 1, len(self.equations)):
                if not _proportional(a, self.equations[j]):
                    continue
                report.add_issue(
                    config.VALIDATION_SEVERITY_WARNING,
                    "Redundancy",
                    "Equations differ only by a single-term factor",
                    location=f"equations {i} and {j}",
                    suggestion="The reduction will delete one of them",
                )
                found += 1
                if quick and found >= config.VALIDATION_MAX_REPORTED_DUPLICATES:
                    return

    def _check_single_term_equations(self, report: ValidationReport):
        for index, equation in enumerate(self.equations):
            if len(equation) == 1 and not equation.is_parametric:
                report.add_issue(
                    config.VALIDATION_SEVERITY_INFO,
                    "Structure",
                    f"Single-term equation: {equation.terms[0].kernel} vanishes",
                    location=f"equation {index}",
                )

    def _check_unused_names(self, report: ValidationReport):
        used = set()
        for equation in self.equations:
            for atom in equation.atoms():
                used.add(atom.name)
                used.update(atom.variables)
                used.update(atom.unknown_names())
                for argument in atom.arguments:
                    used.update(inner.name for inner in argument.atoms())
        for rule in self.rules:
            used.add(rule.atom.name)
            for argument in rule.atom.arguments:
                used.update(inner.name for inner in argument.atoms())
        unused = [name for name in self.table.names() if name not in used]
        if unused:
            report.add_issue(
                config.VALIDATION_SEVERITY_INFO,
                "Declarations",
                f"Declared but never used: {', '.join(unused)}",
                suggestion="Remove the declarations or check for misspelled names",
            )

    def _check_unused_rules(self, report: ValidationReport):
        if self.unrewritten is None:
            return
        for position, rule in enumerate(self.rules):
            fires = any(term.parametric.exponent(rule.atom) >= rule.exponent
                        for equation in self.unrewritten for term in equation)
            if not fires:
                report.add_issue(
                    config.VALIDATION_SEVERITY_INFO,
                    "Rules",
                    f"Rule {rule} never applies to the input equations",
                    location=f"rule {position}",
                )
