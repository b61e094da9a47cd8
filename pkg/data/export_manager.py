"""
Export functionality for reduction results: stats, step logs, CSV and Excel.

Stats and step logs are JSON lines with sorted keys, one record per line.
"""

import json
from pathlib import Path
from typing import Dict, Iterable, Optional, TextIO, Tuple

import pandas as pd
from openpyxl.styles import Font

import config
from reduction.scheduler import ReductionStep, SystemState, steps, total_terms


def build_stats(state: SystemState) -> Dict[str, object]:
    """Summary record of a reduction run."""
    return {
        "equations_before": state.initial_equations,
        "equations_after": len(state.equations),
        "terms_before": state.initial_terms,
        "terms_after": total_terms(state),
        "steps": steps(state),
        "strategy": state.strategy.value,
        "inconsistencies": len(state.inconsistencies),
        "deleted_redundancies": state.deleted_redundancies,
    }


def json_line(record: Dict[str, object]) -> str:
    return json.dumps(record, sort_keys=True)


def _write_lines(filepath, lines: Iterable[str], what: str) -> Tuple[bool, str]:
    try:
        with open(filepath, "w", encoding="utf-8") as handle:
            count = 0
            for line in lines:
                handle.write(line + "\n")
                count += 1
        return True, f"Wrote {count} {what} record(s) to {filepath}"
    except PermissionError:
        return False, f"Permission denied: {filepath}. Check that the location is writable."
    except OSError as e:
        return False, f"Error writing {what}: {str(e)}"


def write_stats(filepath, state: SystemState) -> Tuple[bool, str]:
    """Write the stats report (a single JSON line)."""
    return _write_lines(filepath, [json_line(build_stats(state))], "stats")


def write_step_log(filepath, log: Iterable[ReductionStep]) -> Tuple[bool, str]:
    """Write one JSON line per accepted step."""
    return _write_lines(filepath, (json_line(step.to_record()) for step in log), "step")


def write_frame_csv(filepath, frame: pd.DataFrame) -> Tuple[bool, str]:
    """Write a table (bench grid, strategy comparison) as CSV without index."""
    try:
        frame.to_csv(filepath, index=False, lineterminator="\n")
        return True, f"Wrote {len(frame)} row(s) to {filepath}"
    except PermissionError:
        return False, f"Permission denied: {filepath}. Please close the file if it's open."
    except OSError as e:
        return False, f"Error writing CSV: {str(e)}"


def print_frame_csv(frame: pd.DataFrame, stream: TextIO):
    stream.write(frame.to_csv(index=False, lineterminator="\n"))


def _autosize(worksheet):
    for column in worksheet.columns:
        column_letter = column[0].column_letter
        max_length = max((len(str(cell.value)) for cell in column if cell.value is not None),
                         default=0)
        worksheet.column_dimensions[column_letter].width = min(max_length + 2,
                                                               config.EXPORT_MAX_COLUMN_WIDTH)


def export_diagnostics_excel(filepath, occupancy: pd.DataFrame, odes: pd.DataFrame,
                             decoupling: Optional[pd.DataFrame] = None) -> Tuple[bool, str]:
    """
    Export diagnostics tables to an Excel workbook, one sheet per table.

    Args:
        filepath: Full path to .xlsx file
        occupancy: Occupancy table (equation, terms, unknowns)
        odes: ODE findings (equation, unknown, base, variable)
        decoupling: Optional per-unknown equation counts

    Returns:
        (success: bool, message: str)
    """
    sheets = {config.EXPORT_SHEET_OCCUPANCY: occupancy, config.EXPORT_SHEET_ODES: odes}
    if decoupling is not None:
        sheets[config.EXPORT_SHEET_DECOUPLING] = decoupling
    try:
        with pd.ExcelWriter(filepath, engine="openpyxl") as writer:
            for name, frame in sheets.items():
                frame.to_excel(writer, sheet_name=name, index=False)
                worksheet = writer.sheets[name]
                for cell in worksheet[1]:
                    cell.font = Font(bold=True)
                worksheet.freeze_panes = "A2"
                _autosize(worksheet)
        return True, f"Successfully exported to {Path(filepath)}"
    except PermissionError:
        return False, f"Permission denied: {filepath}. Please close the file if it's open."
    except Exception as e:
        return False, f"Error exporting to Excel: {str(e)}"
