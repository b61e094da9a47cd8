"""Shared fixtures: corpus files and small parsed systems."""

import logging
from pathlib import Path

import pytest

from algebra.parser import parse_expression, parse_system
from data.system_manager import ParsedSystem
from reduction.scheduler import SystemState

CORPORA = Path(__file__).resolve().parent.parent / "corpora"


@pytest.fixture
def corpus_path():
    """Path of a shipped corpus file by stem, e.g. corpus_path("kimura")."""

    def _path(name: str) -> Path:
        return CORPORA / f"{name}.eqs"

    return _path


@pytest.fixture
def load_corpus(corpus_path):
    def _load(name: str, promote=()) -> ParsedSystem:
        text = corpus_path(name).read_text(encoding="utf-8")
        return ParsedSystem(*parse_system(text, promote=promote))

    return _load


@pytest.fixture
def parse():
    """parse(text, table) -> Expression, for one-off expressions."""

    def _parse(text, table, rules=()):
        return parse_expression(text, table, rules)

    return _parse


@pytest.fixture
def worked(load_corpus) -> ParsedSystem:
    return load_corpus("worked_example")


@pytest.fixture
def kimura(load_corpus) -> ParsedSystem:
    return load_corpus("kimura")


@pytest.fixture
def state_of():
    def _state(system: ParsedSystem, strategy="few") -> SystemState:
        return SystemState.build(system.table, system.equations, system.rules, strategy)

    return _state


@pytest.fixture
def clean_logging():
    """Remove handlers installed by configure_logging after the test."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_term_reduction", False):
            root.removeHandler(handler)
            handler.close()
