"""Tests for stats records, step logs, CSV and Excel export."""

import io
import json

import pandas as pd
from openpyxl import load_workbook

import config
from analysis.diagnostics import (
    decoupling_summary,
    occupancy_frame,
    occupancy_table,
    ode_frame,
    scan_odes,
)
from data.export_manager import (
    build_stats,
    export_diagnostics_excel,
    json_line,
    print_frame_csv,
    write_frame_csv,
    write_stats,
    write_step_log,
)
from reduction.scheduler import run_reduction

WORKED_STATS = (
    '{"deleted_redundancies": 0, "equations_after": 2, "equations_before": 2, '
    '"inconsistencies": 0, "steps": 1, "strategy": "few", "terms_after": 7, '
    '"terms_before": 8}'
)

WORKED_STEP = (
    '{"M": 3, "kept": 1, "m": 2, "multiplier_longer": "3*y", "multiplier_shorter": "2*x", '
    '"n_after": 3, "n_longer": 4, "n_shorter": 4, "outcome": "reduced", "predicted": 3, '
    '"quotient": "2/3*x/y", "replaced": 0, "step": 1}'
)


def test_stats_line_is_stable(worked, state_of, tmp_path):
    state = run_reduction(state_of(worked))
    assert json_line(build_stats(state)) == WORKED_STATS
    path = tmp_path / "stats.jsonl"
    success, _ = write_stats(path, state)
    assert success
    assert path.read_text(encoding="utf-8") == WORKED_STATS + "\n"


def test_step_log(worked, state_of, tmp_path):
    state = run_reduction(state_of(worked))
    path = tmp_path / "steps.jsonl"
    success, message = write_step_log(path, state.log)
    assert success
    assert "1 step record" in message
    assert path.read_text(encoding="utf-8") == WORKED_STEP + "\n"


def test_motivating_stats(load_corpus, state_of):
    stats = build_stats(run_reduction(state_of(load_corpus("motivating"))))
    assert (stats["terms_before"], stats["terms_after"]) == (6, 3)
    assert stats["steps"] == 2
    assert stats["inconsistencies"] == 1


def test_write_failure_is_reported(worked, state_of, tmp_path):
    success, message = write_stats(tmp_path / "missing" / "stats.jsonl", state_of(worked))
    assert not success
    assert "Error writing stats" in message


def test_frame_csv(tmp_path):
    frame = pd.DataFrame({"strategy": ["few", "many"], "terms": [81, 117]})
    path = tmp_path / "compare.csv"
    assert write_frame_csv(path, frame)[0]
    assert path.read_text(encoding="utf-8") == "strategy,terms\nfew,81\nmany,117\n"

    stream = io.StringIO()
    print_frame_csv(frame, stream)
    assert stream.getvalue() == "strategy,terms\nfew,81\nmany,117\n"


def test_diagnostics_workbook(kimura, state_of, tmp_path):
    state = state_of(kimura)
    occupancy = occupancy_frame(occupancy_table(state))
    odes = ode_frame(scan_odes(state))
    decoupling = decoupling_summary(state).as_frame()
    path = tmp_path / "diagnostics.xlsx"

    success, _ = export_diagnostics_excel(path, occupancy, odes, decoupling)
    assert success

    workbook = load_workbook(path)
    assert workbook.sheetnames == [config.EXPORT_SHEET_OCCUPANCY, config.EXPORT_SHEET_ODES,
                                   config.EXPORT_SHEET_DECOUPLING]
    sheet = workbook[config.EXPORT_SHEET_OCCUPANCY]
    assert [cell.value for cell in sheet[1]] == ["equation", "terms", "unknowns"]
    assert sheet["A1"].font.bold
    assert sheet.freeze_panes == "A2"
    assert sheet.max_row == 21
    assert sheet.column_dimensions["C"].width <= config.EXPORT_MAX_COLUMN_WIDTH


def test_workbook_without_decoupling(tmp_path):
    empty = pd.DataFrame(columns=["equation", "unknown", "base", "variable"])
    occupancy = pd.DataFrame({"equation": [0], "terms": [2], "unknowns": ["f"]})
    path = tmp_path / "small.xlsx"
    assert export_diagnostics_excel(path, occupancy, empty)[0]
    assert load_workbook(path).sheetnames == [config.EXPORT_SHEET_OCCUPANCY,
                                              config.EXPORT_SHEET_ODES]


def test_records_parse_as_json(worked, state_of):
    state = run_reduction(state_of(worked))
    record = json.loads(json_line(state.log[0].to_record()))
    assert record["predicted"] == record["n_after"] == 3
