"""Tests for argument validation and logging setup."""

import logging

import config
from utils.helpers import configure_logging, validate_grid, validate_run_limits


def test_validate_grid():
    assert validate_grid([100, 1000], [10], 3, 7, 7) == (True, "")
    assert not validate_grid([], [10], 3, 7, 7)[0]
    assert not validate_grid([0], [10], 3, 7, 7)[0]
    assert not validate_grid([10], [10], 0, 7, 7)[0]
    assert not validate_grid([10], [10], 1, 0, 7)[0]
    ok, message = validate_grid([10], [10], 1, 2, -1)
    assert not ok and "degree" in message


def test_validate_run_limits():
    assert validate_run_limits(None, 1) == (True, "")
    assert validate_run_limits(0, 4)[0]
    assert not validate_run_limits(-1, 1)[0]
    assert "--threads" in validate_run_limits(None, 0)[1]


def test_configure_logging_writes_file(tmp_path, clean_logging):
    log_file = configure_logging(verbose=True, log_dir=tmp_path)
    assert log_file == tmp_path / config.LOG_FILE_NAME
    logging.getLogger("reduction.scheduler").debug("hello from the scheduler")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "hello from the scheduler" in log_file.read_text(encoding="utf-8")


def test_configure_logging_replaces_its_handlers(tmp_path, clean_logging):
    configure_logging(log_dir=tmp_path)
    configure_logging(log_dir=tmp_path)
    ours = [h for h in logging.getLogger().handlers if getattr(h, "_term_reduction", False)]
    assert len(ours) == 2
