"""Tests for pairwise quotient collection, selection and combination."""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from algebra.expressions import Monomial, VariableTable
from algebra.linearizer import partition
from errors import InternalConsistencyError
from reduction.quotient_engine import (
    QuotientKey,
    Reduction,
    apply_reduction,
    best_reduction,
    bound_B,
    collect_quotients,
    combine,
    evaluate_pair,
    precheck,
    processing_order,
)
from toolkit.oracle import oracle_best
from toolkit.random_polys import random_small_pair, reducible_pair


def _classes(table):
    """{'num/den': ({value: count}, total)} for readable comparisons."""
    return {str(key): (dict(c.members), c.total) for key, c in table.classes.items()}


@pytest.fixture
def worked_partitions(worked):
    e1, e2 = worked.equations
    return e1, e2, partition(e1), partition(e2)


@pytest.fixture
def power_pair(parse):
    table = VariableTable(independents=("x", "y"), unknowns=("f",))
    e1 = parse("(x + x^2 + x^3 + x^4)*f", table)
    e2 = parse("(y + y^2 + y^3 + y^4)*f", table)
    return e1, e2


class TestWorkedExample:
    def test_quotient_table(self, worked_partitions):
        _, _, p1, p2 = worked_partitions
        table = collect_quotients(p1, p2)
        assert _classes(table) == {
            "x/y": ({Fraction(2, 3): 2, Fraction(-5, 7): 1}, 3),
            "1/1": ({Fraction(-2, 3): 1, Fraction(2): 1}, 2),
        }
        assert table.raw_quotients == 6
        assert not table.aborted

    def test_unpruned_table_keeps_hopeless_class(self, worked_partitions):
        _, _, p1, p2 = worked_partitions
        table = collect_quotients(p1, p2, prune=False)
        assert _classes(table)["y/x"] == ({Fraction(-2): 1}, 1)
        assert len(table) == 3
        assert table.raw_quotients == 6

    def test_best_reduction(self, worked_partitions):
        _, _, p1, p2 = worked_partitions
        reduction = best_reduction(collect_quotients(p1, p2))
        assert reduction.value == Fraction(2, 3)
        assert str(reduction.key) == "x/y"
        assert (reduction.m, reduction.M) == (2, 3)
        assert reduction.predicted_n3 == 3
        assert str(reduction.multiplier_for_e1) == "3*y"
        assert str(reduction.multiplier_for_e2) == "2*x"
        assert reduction.quotient_text == "2/3*x/y"

    def test_combination(self, worked_partitions):
        e1, e2, _, _ = worked_partitions
        reduction = evaluate_pair(e1, e2)
        assert str(apply_reduction(e1, e2, reduction)) == "6*x^2*f + 18*y^2*f + 29*x*y"

    def test_precheck_and_bound(self, worked_partitions):
        e1, e2, p1, p2 = worked_partitions
        assert precheck(p1, p2, len(e2))
        order = processing_order(p1, p2)
        assert [str(k) for k in order] == ["f", "g", "1"]
        assert bound_B(p1, p2, order[0], processed=1) == 3
        assert bound_B(p1, p2, order[2], processed=0, order=order) == 1

    def test_wrong_prediction_is_detected(self, worked_partitions):
        e1, e2, _, _ = worked_partitions
        key = QuotientKey.of(Monomial.of(e1.atoms()[0]), Monomial.of(e1.atoms()[1]))
        bogus = Reduction(value=Fraction(2, 3), key=key, m=1, M=3, n1=4, n2=4)
        with pytest.raises(InternalConsistencyError):
            apply_reduction(e1, e2, bogus)


class TestPruning:
    def test_scan_aborts_when_nothing_can_reduce(self, power_pair):
        e1, e2 = power_pair
        pruned = collect_quotients(partition(e1), partition(e2))
        full = collect_quotients(partition(e1), partition(e2), prune=False)
        assert pruned.aborted
        assert len(pruned) == 0
        assert pruned.raw_quotients == 12
        assert full.raw_quotients == 16
        assert best_reduction(pruned) is None
        assert best_reduction(full) is None

    def test_same_choice_with_and_without_pruning(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            e1, e2 = random_small_pair(rng)
            p1, p2 = partition(e1), partition(e2)
            pruned = best_reduction(collect_quotients(p1, p2, prune=True))
            full = best_reduction(collect_quotients(p1, p2, prune=False))
            assert pruned == full

    def test_no_shared_kernel_fails_precheck(self, parse):
        table = VariableTable(independents=("x",), unknowns=("f", "g"))
        e1, e2 = parse("x*f + f", table), parse("x*g", table)
        assert not precheck(partition(e1), partition(e2), len(e2))
        assert evaluate_pair(e1, e2) is None


class TestAgainstOracle:
    def test_engine_matches_brute_force(self):
        cases = 0
        for seed in range(20):
            rng = np.random.default_rng(seed)
            for _ in range(100):
                e1, e2 = random_small_pair(rng)
                reduction = evaluate_pair(e1, e2)
                minimum, witness = oracle_best(e1, e2)
                if reduction is None:
                    assert witness is None, f"engine missed {e1} / {e2}"
                else:
                    assert reduction.predicted_n3 == minimum
                    assert len(apply_reduction(e1, e2, reduction)) == minimum
                cases += 1
        assert cases >= 2000

    def test_oracle_witness_on_worked_example(self, worked):
        e1, e2 = worked.equations
        minimum, witness = oracle_best(e1, e2)
        assert minimum == 3
        assert str(witness.multiplier_e1) == "3*y"
        assert str(witness.multiplier_e2) == "2*x"


def _to_sympy(expression):
    return sympy.sympify(str(expression)) if not expression.is_zero else sympy.Integer(0)


def test_result_lies_in_the_ideal_of_its_parents():
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 50:
        e2, e1 = reducible_pair(rng, 8, 3, 3, n_unknowns=2)
        reduction = evaluate_pair(e1, e2) if len(e1) >= len(e2) else None
        if reduction is None:
            continue
        result = combine(e1, e2, reduction)
        left, right = reduction.multiplier_for_e1, reduction.multiplier_for_e2
        expected = (sympy.sympify(str(left)) * _to_sympy(e1)
                    - sympy.sympify(str(right)) * _to_sympy(e2))
        assert sympy.expand(expected - _to_sympy(result)) == 0
        checked += 1


@pytest.mark.slow
def test_predicted_counts_are_exact():
    rng = np.random.default_rng(2024)
    accepted = 0
    while accepted < 10_000:
        n_terms = int(rng.integers(2, 16))
        e2, e1 = reducible_pair(rng, n_terms, 3, 4, n_unknowns=int(rng.integers(0, 3)))
        if len(e1) < len(e2):
            e1, e2 = e2, e1
        reduction = evaluate_pair(e1, e2)
        if reduction is None:
            continue
        assert len(combine(e1, e2, reduction)) == reduction.predicted_n3
        accepted += 1
