import sys
import time
from pathlib import Path

import pytest

from amrplus.penman import parse_many

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
SUITE_BUDGET = 60.0  # seconds, for the whole test run

sys.path.insert(0, str(Path(__file__).resolve().parent))

_started = time.perf_counter()


@pytest.fixture(scope="session")
def golden():
    return {d.id: d for d in parse_many((CORPUS / "golden.amrp").read_text())}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", {})
    if not results:
        return
    elapsed = time.perf_counter() - _started
    terminalreporter.section("acceptance")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
    ok = elapsed < SUITE_BUDGET
    terminalreporter.write_line(
        f"ACCEPTANCE 9 {'PASS' if ok else 'FAIL'} total suite runtime {elapsed:.2f}s (<{SUITE_BUDGET:.0f}s)"
    )


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _started >= SUITE_BUDGET and exitstatus == 0:
        session.exitstatus = 1
