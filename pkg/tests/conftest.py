import time

import pytest

from slowlight.medium import PAPER_BASELINE

_ACCEPTANCE_LINES: list[str] = []
_SUITE_BUDGET_S = 120.0
_start = time.perf_counter()


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def baseline():
    return PAPER_BASELINE


def pytest_sessionstart(session):
    global _start
    _start = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _start
    ok = elapsed < _SUITE_BUDGET_S
    if _ACCEPTANCE_LINES:
        _ACCEPTANCE_LINES.append(
            f"[{'PASS' if ok else 'FAIL'}] 9 full suite wall time {elapsed:.1f} s < {_SUITE_BUDGET_S:.0f} s")
    if not ok and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
