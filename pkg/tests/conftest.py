import sys
from pathlib import Path

import pytest

from plume import defaults

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(autouse=True)
def _packaged_data_files():
    """Keep tests independent: always start from the packaged data files."""
    defaults.reset()
    yield
    defaults.reset()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in report.nodeid and "test_criterion" in report.nodeid:
                name = report.nodeid.split("::")[-1].replace("test_criterion_", "")
                lines.append((name, outcome == "passed"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, ok in sorted(lines):
            terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
