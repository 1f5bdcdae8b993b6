"""Shared fixtures: isolated settings, logs and fixture files."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from ballotope.infra.settings import settings

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "data" / "fixtures.json"


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Point logs at tmp_path and fixtures at the repo copy, then reload."""
    monkeypatch.setenv("BALLOTOPE_LOGFILE", str(tmp_path / "logs" / "ballotope.log"))
    monkeypatch.setenv("BALLOTOPE_FIXTURESFILE", str(FIXTURES))
    settings.reload()
    yield
    monkeypatch.undo()
    settings.reload()


@pytest.fixture
def fixtures_data() -> dict:
    return json.loads(FIXTURES.read_text(encoding="utf-8"))


@pytest.fixture
def write_fixtures(tmp_path):
    """Write a (possibly corrupted) fixtures file and return its path."""

    def _write(data: dict | str) -> str:
        path = tmp_path / "fixtures.json"
        text = data if isinstance(data, str) else json.dumps(data)
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture(scope="session")
def envelope_schema() -> dict:
    return json.loads((ROOT / "docs" / "envelope.schema.json").read_text(encoding="utf-8"))
