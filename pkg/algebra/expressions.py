"""
Canonical sparse expressions with exact rational coefficients.

An expression is a sum of terms. Each term is a nonzero rational coefficient
times a parametric monomial (independents, parameters and opaque functions of
them) times a kernel monomial (unknowns, derivatives of unknowns and opaque
constructs containing them). The kernel monomial of a term plays the role of
one linear variable during length reduction.

Canonical order:
    atoms:  independents < parameters < opaque params < unknowns < derivatives
            < opaque kernels; within a kind by name, then derivative variables,
            then printed arguments.
    monomials: lexicographic over (atom, descending exponent).
    terms:  by kernel monomial (the constant kernel 1 last), then by
            parametric monomial.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import config
from errors import ExpressionError, MultiplierError, RewriteLimitError, RuleError


class AtomKind(enum.IntEnum):
    """Atom categories, in canonical sort order."""

    INDEPENDENT = 0
    PARAMETER = 1
    OPAQUE_PARAM = 2
    UNKNOWN = 3
    DERIVATIVE = 4
    OPAQUE_KERNEL = 5


PARAMETRIC_KINDS = frozenset({AtomKind.INDEPENDENT, AtomKind.PARAMETER, AtomKind.OPAQUE_PARAM})


class Atom:
    """
    A single symbol of an expression.

    Derivatives carry their differentiation variables as a sorted tuple (a
    multiset). Opaque applications carry their argument expressions and are
    keyed by their printed form.
    """

    __slots__ = ("kind", "name", "variables", "arguments", "_key", "_hash")

    def __init__(self, kind: AtomKind, name: str,
                 variables: Sequence[str] = (), arguments: Sequence["Expression"] = ()):
        if not name:
            raise ExpressionError("Atom names must be nonempty")
        if kind == AtomKind.DERIVATIVE and not variables:
            raise ExpressionError(f"Derivative of '{name}' needs at least one variable")
        if kind != AtomKind.DERIVATIVE and variables:
            raise ExpressionError(f"Only derivatives carry variables, got {kind.name}")
        self.kind = AtomKind(kind)
        self.name = name
        self.variables: Tuple[str, ...] = tuple(sorted(variables))
        self.arguments: Tuple[Expression, ...] = tuple(arguments)
        self._key = (int(self.kind), name, self.variables,
                     tuple(str(arg) for arg in self.arguments))
        self._hash = hash(self._key)

    @classmethod
    def independent(cls, name: str) -> "Atom":
        return cls(AtomKind.INDEPENDENT, name)

    @classmethod
    def parameter(cls, name: str) -> "Atom":
        return cls(AtomKind.PARAMETER, name)

    @classmethod
    def unknown(cls, name: str) -> "Atom":
        return cls(AtomKind.UNKNOWN, name)

    @classmethod
    def derivative(cls, name: str, variables: Sequence[str]) -> "Atom":
        return cls(AtomKind.DERIVATIVE, name, variables=variables)

    @classmethod
    def application(cls, name: str, arguments: Sequence["Expression"]) -> "Atom":
        """Opaque function application; a kernel if any argument contains a kernel atom."""
        bearing = any(not arg.is_parametric for arg in arguments)
        kind = AtomKind.OPAQUE_KERNEL if bearing else AtomKind.OPAQUE_PARAM
        return cls(kind, name, arguments=arguments)

    @property
    def is_parametric(self) -> bool:
        return self.kind in PARAMETRIC_KINDS

    @property
    def sort_key(self) -> tuple:
        return self._key

    def unknown_names(self) -> FrozenSet[str]:
        """Names of the unknown functions this atom refers to."""
        if self.kind in (AtomKind.UNKNOWN, AtomKind.DERIVATIVE):
            return frozenset({self.name})
        if self.kind == AtomKind.OPAQUE_KERNEL:
            names = set()
            for arg in self.arguments:
                for atom in arg.atoms():
                    names |= atom.unknown_names()
            return frozenset(names)
        return frozenset()

    def __eq__(self, other):
        return isinstance(other, Atom) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Atom"):
        return self._key < other._key

    def __str__(self):
        if self.kind == AtomKind.DERIVATIVE:
            return f"{config.DERIVATIVE_FUNCTION}({self.name},{','.join(self.variables)})"
        if self.kind in (AtomKind.OPAQUE_PARAM, AtomKind.OPAQUE_KERNEL):
            return f"{self.name}({','.join(str(arg) for arg in self.arguments)})"
        return self.name

    def __repr__(self):
        return f"Atom({self.kind.name}, {str(self)!r})"


class Monomial:
    """Product of atom powers; exponents are positive integers, the empty product is 1."""

    __slots__ = ("_items", "_hash")

    def __init__(self, powers: Union[Mapping[Atom, int], Iterable[Tuple[Atom, int]]] = ()):
        pairs = powers.items() if isinstance(powers, Mapping) else powers
        collected: Dict[Atom, int] = {}
        for atom, exponent in pairs:
            if exponent < 0:
                raise ExpressionError(f"Negative exponent {exponent} for {atom}")
            if exponent:
                collected[atom] = collected.get(atom, 0) + exponent
        self._items: Tuple[Tuple[Atom, int], ...] = tuple(
            sorted(collected.items(), key=lambda pair: pair[0].sort_key)
        )
        self._hash = hash(self._items)

    @classmethod
    def _from_dict(cls, powers: Dict[Atom, int]) -> "Monomial":
        # Caller guarantees positive exponents.
        mono = cls.__new__(cls)
        mono._items = tuple(sorted(powers.items(), key=lambda pair: pair[0].sort_key))
        mono._hash = hash(mono._items)
        return mono

    @classmethod
    def one(cls) -> "Monomial":
        return ONE

    @classmethod
    def of(cls, atom: Atom, exponent: int = 1) -> "Monomial":
        return cls(((atom, exponent),))

    @property
    def items(self) -> Tuple[Tuple[Atom, int], ...]:
        return self._items

    def as_dict(self) -> Dict[Atom, int]:
        return dict(self._items)

    @property
    def is_one(self) -> bool:
        return not self._items

    @property
    def degree(self) -> int:
        return sum(exponent for _, exponent in self._items)

    @property
    def is_parametric(self) -> bool:
        return all(atom.is_parametric for atom, _ in self._items)

    @property
    def is_kernel(self) -> bool:
        return all(not atom.is_parametric for atom, _ in self._items)

    @property
    def sort_key(self) -> tuple:
        return tuple((atom.sort_key, -exponent) for atom, exponent in self._items)

    def atoms(self) -> Tuple[Atom, ...]:
        return tuple(atom for atom, _ in self._items)

    def exponent(self, atom: Atom) -> int:
        for candidate, exponent in self._items:
            if candidate == atom:
                return exponent
        return 0

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other._items:
            return self
        if not self._items:
            return other
        powers = dict(self._items)
        for atom, exponent in other._items:
            powers[atom] = powers.get(atom, 0) + exponent
        return Monomial._from_dict(powers)

    def __pow__(self, n: int) -> "Monomial":
        if n < 0:
            raise ExpressionError("Monomials cannot be raised to negative powers")
        if n == 0:
            return ONE
        return Monomial._from_dict({atom: exponent * n for atom, exponent in self._items})

    def __truediv__(self, other: "Monomial") -> "Monomial":
        """Exact division; raises if `other` does not divide `self`."""
        powers = dict(self._items)
        for atom, exponent in other._items:
            remaining = powers.get(atom, 0) - exponent
            if remaining < 0:
                raise ExpressionError(f"{other} does not divide {self}")
            if remaining:
                powers[atom] = remaining
            else:
                del powers[atom]
        return Monomial._from_dict(powers)

    def gcd(self, other: "Monomial") -> "Monomial":
        powers = other.as_dict()
        common = {}
        for atom, exponent in self._items:
            shared = min(exponent, powers.get(atom, 0))
            if shared:
                common[atom] = shared
        return Monomial._from_dict(common)

    def coprime_ratio(self, other: "Monomial") -> Tuple["Monomial", "Monomial"]:
        """Return (numerator, denominator) of self/other with common factors dropped."""
        theirs = other.as_dict()
        numerator = {}
        for atom, exponent in self._items:
            excess = exponent - theirs.pop(atom, 0)
            if excess > 0:
                numerator[atom] = excess
            elif excess < 0:
                theirs[atom] = -excess
        return Monomial._from_dict(numerator), Monomial._from_dict(theirs)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self._items:
            return "1"
        return "*".join(str(atom) if exponent == 1 else f"{atom}^{exponent}"
                        for atom, exponent in self._items)

    def __repr__(self):
        return f"Monomial({str(self)!r})"


ONE = Monomial()


@dataclass(frozen=True)
class Term:
    """coefficient * parametric * kernel, with a nonzero exact coefficient."""

    coefficient: Fraction
    parametric: Monomial = ONE
    kernel: Monomial = ONE

    def __post_init__(self):
        coefficient = Fraction(self.coefficient)
        if coefficient == 0:
            raise ExpressionError("Term coefficients must be nonzero")
        object.__setattr__(self, "coefficient", coefficient)
        if not self.parametric.is_parametric:
            raise ExpressionError(f"Parametric part {self.parametric} contains kernel atoms")
        if not self.kernel.is_kernel:
            raise ExpressionError(f"Kernel part {self.kernel} contains parametric atoms")

    @property
    def monomial_key(self) -> Tuple[Monomial, Monomial]:
        return self.parametric, self.kernel

    @property
    def sort_key(self) -> tuple:
        return (self.kernel.is_one, self.kernel.sort_key, self.parametric.sort_key)

    def factors(self) -> List[str]:
        return [str(atom) if exponent == 1 else f"{atom}^{exponent}"
                for atom, exponent in self.parametric.items + self.kernel.items]

    def format(self, leading: bool = True) -> str:
        """Print the term; non-leading terms are prefixed with ' + ' or ' - '."""
        magnitude = abs(self.coefficient)
        factors = self.factors()
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = f"{magnitude}*" + "*".join(factors)
        negative = self.coefficient < 0
        if leading:
            return f"-{body}" if negative else body
        return f" - {body}" if negative else f" + {body}"

    def __str__(self):
        return self.format()


RawTerm = Union[Term, Tuple[Union[int, Fraction], Monomial, Monomial]]


class Expression:
    """Immutable normalized sum of terms in canonical order."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Term] = ()):
        # Trusted constructor: terms must already be merged and nonzero.
        self._terms: Tuple[Term, ...] = tuple(sorted(terms, key=lambda term: term.sort_key))
        self._hash = hash(tuple((t.coefficient, t.parametric, t.kernel) for t in self._terms))

    @classmethod
    def zero(cls) -> "Expression":
        return cls()

    @classmethod
    def constant(cls, value: Union[int, Fraction]) -> "Expression":
        value = Fraction(value)
        return cls() if value == 0 else cls((Term(value),))

    @classmethod
    def from_atom(cls, atom: Atom, exponent: int = 1) -> "Expression":
        mono = Monomial.of(atom, exponent)
        if atom.is_parametric:
            return cls((Term(Fraction(1), mono, ONE),))
        return cls((Term(Fraction(1), ONE, mono),))

    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_parametric(self) -> bool:
        """True when no term carries a kernel atom (includes the zero expression)."""
        return all(term.kernel.is_one for term in self._terms)

    def kernels(self) -> Tuple[Monomial, ...]:
        """Distinct kernel monomials, in canonical order."""
        seen: Dict[Monomial, None] = {}
        for term in self._terms:
            seen.setdefault(term.kernel, None)
        return tuple(seen)

    def atoms(self) -> Tuple[Atom, ...]:
        seen: Dict[Atom, None] = {}
        for term in self._terms:
            for atom in term.parametric.atoms() + term.kernel.atoms():
                seen.setdefault(atom, None)
        return tuple(sorted(seen, key=lambda atom: atom.sort_key))

    def kernel_atoms(self) -> Tuple[Atom, ...]:
        return tuple(atom for atom in self.atoms() if not atom.is_parametric)

    def unknown_names(self) -> Tuple[str, ...]:
        names = set()
        for atom in self.kernel_atoms():
            names |= atom.unknown_names()
        return tuple(sorted(names))

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self._terms:
            return Fraction(1)
        coefficients = [term.coefficient for term in self._terms]
        numerator = math.gcd(*(c.numerator for c in coefficients))
        denominator = math.lcm(*(c.denominator for c in coefficients))
        return Fraction(numerator, denominator)

    def primitive(self) -> "Expression":
        return self * (1 / self.content())

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self._terms)

    def __neg__(self) -> "Expression":
        return Expression(Term(-t.coefficient, t.parametric, t.kernel) for t in self._terms)

    def __add__(self, other: "Expression") -> "Expression":
        return normalize(self._terms + other._terms)

    def __sub__(self, other: "Expression") -> "Expression":
        return subtract(self, other)

    def __mul__(self, other: Union["Expression", int, Fraction]) -> "Expression":
        if not isinstance(other, Expression):
            factor = Fraction(other)
            if factor == 0:
                return Expression.zero()
            return Expression(Term(t.coefficient * factor, t.parametric, t.kernel)
                              for t in self._terms)
        return normalize(
            Term(a.coefficient * b.coefficient, a.parametric * b.parametric, a.kernel * b.kernel)
            for a in self._terms for b in other._terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Expression":
        if n < 0:
            raise ExpressionError("Negative powers are not supported")
        result = Expression.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, Expression) and self._terms == other._terms

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        first, *rest = self._terms
        return first.format(leading=True) + "".join(term.format(leading=False) for term in rest)

    def __repr__(self):
        return f"Expression({str(self)!r})"


@dataclass(frozen=True)
class VariableTable:
    """Classification of every declared name: independents, unknowns, parameters."""

    independents: Tuple[str, ...] = ()
    unknowns: Tuple[str, ...] = ()
    parameters: Tuple[str, ...] = ()

    def __post_init__(self):
        seen = set()
        for group in (self.independents, self.unknowns, self.parameters):
            for name in group:
                if not name:
                    raise ExpressionError("Declared names must be nonempty")
                if name == config.DERIVATIVE_FUNCTION:
                    raise ExpressionError(f"'{name}' is reserved for derivatives")
                if name in seen:
                    raise ExpressionError(f"Name '{name}' is declared more than once")
                seen.add(name)

    def classify(self, name: str) -> Optional[AtomKind]:
        if name in self.independents:
            return AtomKind.INDEPENDENT
        if name in self.parameters:
            return AtomKind.PARAMETER
        if name in self.unknowns:
            return AtomKind.UNKNOWN
        return None

    def names(self) -> Tuple[str, ...]:
        return self.independents + self.unknowns + self.parameters

    def promote(self, names: Iterable[str]) -> "VariableTable":
        """Treat the given parameters as unknowns (e.g. a constant solved for generically)."""
        names = tuple(names)
        for name in names:
            if name not in self.parameters:
                raise ExpressionError(f"'{name}' is not a declared parameter")
        return VariableTable(
            independents=self.independents,
            unknowns=self.unknowns + tuple(n for n in self.parameters if n in names),
            parameters=tuple(n for n in self.parameters if n not in names),
        )


@dataclass(frozen=True)
class RewriteRule:
    """atom^exponent => rhs, applied to parametric atom powers until none is left."""

    atom: Atom
    exponent: int
    rhs: Expression

    def __post_init__(self):
        if not self.atom.is_parametric:
            raise RuleError(f"Rule left-hand side {self.atom} must be a parametric atom")
        if self.exponent < 1:
            raise RuleError(f"Rule exponent must be positive, got {self.exponent}")
        if not self.rhs.is_parametric:
            raise RuleError(f"Rule right-hand side {self.rhs} must be free of unknowns")
        if self.atom in self.rhs.atoms():
            raise RuleError(f"Rule atom {self.atom} occurs in its own right-hand side")

    def __str__(self):
        return f"{self.atom}^{self.exponent} = {self.rhs}"


def _rewrite_term(term: Term, rules: Sequence[RewriteRule]) -> Optional[Expression]:
    for rule in rules:
        exponent = term.parametric.exponent(rule.atom)
        if exponent >= rule.exponent:
            times, remainder = divmod(exponent, rule.exponent)
            powers = term.parametric.as_dict()
            if remainder:
                powers[rule.atom] = remainder
            else:
                del powers[rule.atom]
            base = Expression((Term(term.coefficient, Monomial._from_dict(powers), term.kernel),))
            return base * rule.rhs ** times
    return None


def apply_rules(expression: Expression, rules: Sequence[RewriteRule]) -> Expression:
    """Apply rewrite rules to a fixpoint."""
    if not rules:
        return expression
    for _ in range(config.MAX_REWRITE_PASSES):
        changed = False
        pieces: List[Term] = []
        for term in expression:
            rewritten = _rewrite_term(term, rules)
            if rewritten is None:
                pieces.append(term)
            else:
                changed = True
                pieces.extend(rewritten.terms)
        if not changed:
            return expression
        expression = normalize(pieces)
    raise RewriteLimitError(
        f"Rewrite rules did not reach a fixpoint after {config.MAX_REWRITE_PASSES} passes"
    )


def normalize(raw_terms: Iterable[RawTerm], rules: Sequence[RewriteRule] = ()) -> Expression:
    """
    Merge like terms, drop zero terms, apply rules and sort.

    Args:
        raw_terms: Terms or (coefficient, parametric, kernel) tuples; tuples may
            carry zero coefficients.
        rules: Rewrite rules applied to a fixpoint after merging.

    Returns:
        The canonical Expression.
    """
    merged: Dict[Tuple[Monomial, Monomial], Fraction] = {}
    for raw in raw_terms:
        if isinstance(raw, Term):
            coefficient, parametric, kernel = raw.coefficient, raw.parametric, raw.kernel
        else:
            coefficient, parametric, kernel = raw
        key = (parametric, kernel)
        merged[key] = merged.get(key, 0) + Fraction(coefficient)
    expression = Expression(
        Term(coefficient, parametric, kernel)
        for (parametric, kernel), coefficient in merged.items()
        if coefficient != 0
    )
    return apply_rules(expression, rules) if rules else expression


def multiply_by_term(expression: Expression, coefficient: Union[int, Fraction],
                     multiplier: Monomial) -> Expression:
    """Scale every term by coefficient * multiplier; the multiplier must be free of unknowns."""
    coefficient = Fraction(coefficient)
    if coefficient == 0:
        raise MultiplierError("Multiplier coefficient must be nonzero")
    if not multiplier.is_parametric:
        raise MultiplierError(f"Multiplier {multiplier} contains kernel atoms")
    # Monomial multiplication is injective, so no like terms can appear.
    return Expression(
        Term(term.coefficient * coefficient, term.parametric * multiplier, term.kernel)
        for term in expression
    )


def subtract(a: Expression, b: Expression, rules: Sequence[RewriteRule] = ()) -> Expression:
    """Normalized difference a - b."""
    return normalize(
        a.terms + tuple(Term(-t.coefficient, t.parametric, t.kernel) for t in b.terms),
        rules,
    )


def term_count(expression: Expression) -> int:
    return len(expression)
