from __future__ import annotations

import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def report_criterion():
    """Record the PASS/FAIL line for one acceptance criterion."""
    def record(number: int, ok: bool, text: str) -> None:
        _LINES[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_LINES):
        terminalreporter.write_line(_LINES[k])
