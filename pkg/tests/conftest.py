"""Shared test plumbing.

The acceptance tests record one PASS/FAIL line per criterion through the
``acceptance`` fixture; the terminal-summary hook prints the collected lines
after the run so the outcome of every criterion is visible even when pytest
captures stdout.
"""

import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Recorder for acceptance-criterion outcomes: call with (label, ok, detail)."""

    def record(label: str, ok: bool, detail: str) -> None:
        _ACCEPTANCE_LINES.append((label, bool(ok), detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for label, ok, detail in _ACCEPTANCE_LINES:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}: {detail}")
