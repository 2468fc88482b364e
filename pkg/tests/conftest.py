"""Shared pytest plumbing.

The release-gate checks in test_acceptance.py report one summary line each;
collect them here and replay the block after the terminal summary so the
verdicts are visible in a plain ``pytest -v`` run.
"""

import pytest

_LINES = []


def _record(number, status, detail):
    line = f"CRITERION {number}: {status} - {detail}"
    _LINES.append((number, line))
    print(line)
    return line


@pytest.fixture
def acceptance():
    """Callable (number, status, detail) -> formatted summary line."""
    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES, key=lambda item: item[0]):
        terminalreporter.write_line(line)
