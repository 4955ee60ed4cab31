import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"
_ACCEPTANCE_LINES = []


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def load_json():
    def load(name):
        return json.loads((DATA / name).read_text(encoding="utf-8"))

    return load


@pytest.fixture
def report_criterion():
    """Record the one-line verdict of an acceptance criterion for the run summary."""

    def record(number: int, passed: bool, detail: str):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
