"""Tests for occupancy tables, ODE detection and decoupling statistics."""

import pytest

from algebra.expressions import Atom, Monomial, VariableTable, multiply_by_term
from analysis.diagnostics import (
    decoupling_summary,
    detect_ode,
    occupancy_frame,
    occupancy_table,
    ode_frame,
    scan_odes,
)

KIMURA_ROWS = [
    (2, {"k12", "k22"}),
    (2, {"k11"}),
    (2, {"k00", "k01"}),
    (3, {"k13", "k23", "k33"}),
    (3, {"k11", "k13"}),
    (3, {"k11", "k12"}),
    (3, {"k01", "k02", "k22"}),
    (3, {"k01", "k11"}),
    (3, {"k00", "k03", "k13"}),
    (3, {"k00", "k02", "k12"}),
    (4, {"k22", "k23", "k33"}),
    (4, {"k01", "k02", "k03", "k33"}),
    (4, {"k11", "k12", "k22"}),
    (4, {"k02", "k03", "k23"}),
    (4, {"k01", "k03", "k13"}),
    (4, {"k01", "k02", "k12"}),
    (4, {"k00", "k01", "k11"}),
    (5, {"k22", "k23", "k33"}),
    (5, {"k11", "k12", "k13", "k33"}),
    (5, {"k12", "k13", "k23"}),
]


def test_kimura_occupancy(kimura, state_of):
    rows = occupancy_table(state_of(kimura))
    assert [(row.terms, set(row.unknowns)) for row in rows] == KIMURA_ROWS
    frame = occupancy_frame(rows)
    assert list(frame.columns) == ["equation", "terms", "unknowns"]
    assert frame.loc[0, "unknowns"] == "k12, k22"


class TestOdeDetection:
    def test_kimura_second_equation_is_an_ode_in_r(self, kimura):
        finding = detect_ode(kimura.equations[1], index=1)
        assert (finding.unknown, finding.base, finding.variable) == ("k11", (), "r")
        assert finding.base_text == "k11"

    def test_two_unknowns_are_not_an_ode(self, kimura):
        assert detect_ode(kimura.equations[2]) is None

    def test_multiplying_by_a_monomial_changes_nothing(self, kimura):
        r_squared = Monomial.of(Atom.independent("r"), 2)
        scaled = [multiply_by_term(kimura.equations[i], 1, r_squared) for i in (1, 2)]
        assert detect_ode(scaled[0], index=1) == detect_ode(kimura.equations[1], index=1)
        assert detect_ode(scaled[1]) is None

    def test_higher_derivative_base(self, parse):
        table = VariableTable(independents=("x", "y"), unknowns=("f",))
        finding = detect_ode(parse("d(f,x,y,y) + x*d(f,x) + d(f,x,y)", table))
        assert finding.variable == "y"
        assert finding.base == ("x",)
        assert finding.base_text == "d(f,x)"

    def test_rejections(self, parse):
        table = VariableTable(independents=("x", "y"), unknowns=("f",))
        assert detect_ode(parse("f^2 + x*f", table)) is None
        assert detect_ode(parse("d(f,x) + d(f,y)", table)) is None
        assert detect_ode(parse("sin(f) + d(f,x)", table)) is None
        assert detect_ode(parse("x + y", table)) is None

    def test_scan(self, kimura, state_of):
        findings = scan_odes(state_of(kimura))
        assert [f.index for f in findings] == [1]
        assert (findings[0].unknown, findings[0].base, findings[0].variable) == ("k11", (), "r")
        assert scan_odes(state_of(kimura)) == findings
        frame = ode_frame(findings)
        assert list(frame.columns) == ["equation", "unknown", "base", "variable"]


def test_decoupling_summary(kimura, state_of):
    summary = decoupling_summary(state_of(kimura))
    assert summary.equations == 20
    assert summary.max_unknowns == 4
    assert summary.single_unknown_equations == 1
    assert summary.mean_unknowns == pytest.approx(2.75)
    assert summary.occurrences["k11"] == 7
    frame = summary.as_frame()
    assert frame.loc[0, "equations"] == frame["equations"].max()
    assert len(frame) == 10


def test_decoupling_summary_of_empty_system(state_of, load_corpus):
    summary = decoupling_summary(state_of(load_corpus("empty")))
    assert summary.equations == 0
    assert summary.mean_unknowns == 0.0
