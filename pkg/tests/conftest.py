"""Shared fixtures for the search package and CLI tests."""

import json
from pathlib import Path

import pytest

from search.templates import example1_standard, example2_standard


@pytest.fixture
def example1():
    return example1_standard()


@pytest.fixture
def example2():
    return example2_standard()


@pytest.fixture
def write_json(tmp_path: Path):
    """Write a JSON payload under tmp_path and return its path."""

    def _write(name: str, payload) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return _write


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Campaign settings come from POSCOMM_* variables; start every test without them."""
    for name in ("LOG_LEVEL", "CORPUS_PATH", "MAX_ATTEMPTS", "WORKERS"):
        monkeypatch.delenv(f"POSCOMM_{name}", raising=False)
