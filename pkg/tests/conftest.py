import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ordertype.harness import Session  # noqa: E402

CONSTRUCTED = ["A7", "A8", "L3_4", "L2_7", "2Frob_168", "2^4:A7", "L3_4:2_2"]

_acceptance: dict[str, str] = {}
_started = time.perf_counter()
FULL_RUN_BUDGET_S = 60.0


@pytest.fixture(scope="session")
def session():
    return Session(seed=1)


@pytest.fixture(scope="session")
def analyses(session):
    return {name: session.analyze(name) for name in CONSTRUCTED}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _acceptance[report.nodeid.split("::")[-1]] = "failed"


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _started
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
    ok = elapsed < FULL_RUN_BUDGET_S
    terminalreporter.write_line(
        f"{'PASS' if ok else 'FAIL'}  full test run {elapsed:.1f} s (budget {FULL_RUN_BUDGET_S:.0f} s)")


def pytest_sessionfinish(session, exitstatus):
    if _acceptance and time.perf_counter() - _started >= FULL_RUN_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
