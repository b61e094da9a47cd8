"""
Seeded random polynomials and constructed reducible pairs.

Exponent vectors are uniform over all vectors with total degree <= max_degree
(stars and bars), coefficients are uniform nonzero integers in
[-RANDOM_COEFFICIENT_BOUND, RANDOM_COEFFICIENT_BOUND], and colliding monomials
are redrawn so the result has exactly the requested number of terms.
"""

from math import comb
from typing import Optional, Sequence, Tuple

import numpy as np

import config
from algebra.expressions import Atom, Expression, Monomial, Term, VariableTable
from errors import GenerationError

Pair = Tuple[Expression, Expression]


def independent_names(n_vars: int) -> Tuple[str, ...]:
    return tuple(f"{config.INDEPENDENT_PREFIX}{i}" for i in range(1, n_vars + 1))


def unknown_names(n_unknowns: int) -> Tuple[str, ...]:
    return tuple(f"{config.UNKNOWN_PREFIX}{i}" for i in range(1, n_unknowns + 1))


def random_table(n_vars: int, n_unknowns: int = 0) -> VariableTable:
    """Variable table matching the names used by random_poly."""
    return VariableTable(independents=independent_names(n_vars),
                         unknowns=unknown_names(n_unknowns))


def _make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _exponents(rng: np.random.Generator, n_vars: int, max_degree: int) -> Tuple[int, ...]:
    # n_vars bars among n_vars + max_degree slots; the gaps are the exponents.
    bars = np.sort(rng.choice(n_vars + max_degree, size=n_vars, replace=False))
    gaps = np.diff(np.concatenate(([-1], bars))) - 1
    return tuple(int(g) for g in gaps)


def _coefficient(rng: np.random.Generator) -> int:
    magnitude = int(rng.integers(1, config.RANDOM_COEFFICIENT_BOUND + 1))
    return magnitude if rng.integers(0, 2) else -magnitude


def random_monomial(rng: np.random.Generator, atoms: Sequence[Atom], max_degree: int) -> Monomial:
    exponents = _exponents(rng, len(atoms), max_degree)
    return Monomial((atom, e) for atom, e in zip(atoms, exponents) if e)


def random_poly(seed, n_terms: int, n_vars: int, max_degree: int,
                n_unknowns: int = 0) -> Expression:
    """
    Random polynomial with exactly n_terms distinct terms.

    Args:
        seed: Integer seed or numpy Generator
        n_terms: Number of terms (>= 1)
        n_vars: Number of independents x1..xN (>= 1)
        max_degree: Bound on the total degree in the independents
        n_unknowns: When positive, each term is attached to a kernel drawn from
            {1, u1, ..., uK}

    Returns:
        Normalized Expression

    Raises:
        GenerationError: if the request is impossible
    """
    if n_terms < 1 or n_vars < 1 or max_degree < 0 or n_unknowns < 0:
        raise GenerationError(
            f"Invalid request: {n_terms} terms, {n_vars} variables, degree {max_degree}"
        )
    available = comb(n_vars + max_degree, max_degree) * (n_unknowns + 1)
    if n_terms > available:
        raise GenerationError(
            f"Only {available} distinct terms exist with {n_vars} variables, "
            f"degree <= {max_degree} and {n_unknowns} unknowns; {n_terms} requested"
        )

    rng = _make_rng(seed)
    variables = [Atom.independent(name) for name in independent_names(n_vars)]
    kernels = [Monomial.one()] + [Monomial.of(Atom.unknown(name))
                                  for name in unknown_names(n_unknowns)]
    terms = {}
    while len(terms) < n_terms:
        parametric = random_monomial(rng, variables, max_degree)
        kernel = kernels[int(rng.integers(0, len(kernels)))]
        coefficient = _coefficient(rng)
        terms.setdefault((parametric, kernel), Term(coefficient, parametric, kernel))
    return Expression(terms.values())


def truncate(rng: np.random.Generator, expression: Expression, n_terms: int) -> Expression:
    """Keep a random subset of n_terms terms."""
    if len(expression) <= n_terms:
        return expression
    keep = np.sort(rng.choice(len(expression), size=n_terms, replace=False))
    return Expression(expression.terms[int(i)] for i in keep)


def reducible_pair(seed, n_terms: int, n_vars: int, max_degree: int, n_unknowns: int = 0,
                   n_base: Optional[int] = None) -> Pair:
    """
    Build (P1, P3) with P3 = truncate(c*m*P1 + P2, n_terms).

    P1 has n_base terms (default n_terms), P2 has REDUCIBLE_NOISE_FRACTION of
    that, and c*m is a random single-term multiple. Reducing P3 by P1 is
    expected, but not guaranteed, to succeed.
    """
    rng = _make_rng(seed)
    n_base = n_terms if n_base is None else n_base
    n_noise = max(1, round(n_base * config.REDUCIBLE_NOISE_FRACTION))
    p1 = random_poly(rng, n_base, n_vars, max_degree, n_unknowns)
    p2 = random_poly(rng, n_noise, n_vars, max_degree, n_unknowns)
    variables = [Atom.independent(name) for name in independent_names(n_vars)]
    multiple = random_monomial(rng, variables, config.RANDOM_MULTIPLE_MAX_DEGREE)
    combined = p1 * Expression([Term(_coefficient(rng), multiple)]) + p2
    return p1, truncate(rng, combined, n_terms)


def random_small_pair(seed, max_terms: int = 8, max_vars: int = 3, max_unknowns: int = 3,
                      max_degree: int = 3) -> Pair:
    """
    Small random pair (longer first) for oracle comparisons.

    Half of the pairs are constructed to be reducible, the rest are independent
    random polynomials, so both outcomes are exercised.
    """
    rng = _make_rng(seed)
    n_vars = int(rng.integers(1, max_vars + 1))
    n_unknowns = int(rng.integers(0, max_unknowns + 1))
    capacity = comb(n_vars + max_degree, max_degree) * (n_unknowns + 1)
    top = min(max_terms, capacity)
    if rng.integers(0, 2):
        n_terms = int(rng.integers(1, top + 1))
        e2, e1 = reducible_pair(rng, n_terms, n_vars, max_degree, n_unknowns,
                                n_base=int(rng.integers(1, top + 1)))
    else:
        e1 = random_poly(rng, int(rng.integers(1, top + 1)), n_vars, max_degree, n_unknowns)
        e2 = random_poly(rng, int(rng.integers(1, top + 1)), n_vars, max_degree, n_unknowns)
    if len(e1) < len(e2):
        e1, e2 = e2, e1
    return e1, e2
