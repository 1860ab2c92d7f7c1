import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from numclaims import kernels  # noqa: E402


@pytest.fixture(scope="session", params=sorted(kernels.backends()))
def backend(request):
    """Each available kernel implementation module in turn."""
    return kernels.backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in criterion order."""
    rows = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            if getattr(rep, "when", "call") != "call" and key != "error":
                continue
            name = rep.nodeid.rsplit("::", 1)[-1]
            if "test_acceptance.py" in rep.nodeid and name.startswith("test_criterion_"):
                num = int(name.split("_")[2])
                rows.append((num, "PASS" if key == "passed" else "FAIL", name))
    if rows:
        terminalreporter.section("acceptance criteria")
        for num, verdict, name in sorted(rows):
            terminalreporter.write_line(f"criterion {num:>2}: {verdict}  ({name})")
