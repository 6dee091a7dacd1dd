"""Shared fixtures and the per-criterion summary lines.

The acceptance suite (test_acceptance.py) carries one test per numbered
criterion; the terminal-summary hook below turns their outcomes into one
"criterion N: PASS/FAIL" line each so the verdicts survive in captured
pytest output.
"""

import re

import pytest

from superw.pyramid import enumerate_pyramids, from_shift
from superw.tableau import Tableau

# flagship example used throughout: p = (2, 3, 4), minus/plus/minus rows
FLAG_SHIFT = [[0, 1, 1], [0, 0, 0], [1, 1, 0]]
FLAG_ELL = 4
FLAG_SIGNS = "101"

# short per-criterion annotations, filled in by the acceptance tests
ACCEPTANCE_DETAILS: dict[int, str] = {}


@pytest.fixture(scope="session")
def gl36():
    return from_shift(FLAG_SHIFT, FLAG_ELL, FLAG_SIGNS)


@pytest.fixture(scope="session")
def worked_tableau(gl36):
    # column-connected filling whose eigenvalue tables are frozen in the tests
    return Tableau.from_rows(gl36, [[-2, -2], [1, 1, 1], [3, -2, -2, -2]])


@pytest.fixture(scope="session")
def pyramids8():
    """Every pyramid with at most 8 boxes, over every sign word."""
    return list(enumerate_pyramids(8))


@pytest.fixture(scope="session")
def acceptance_details():
    return ACCEPTANCE_DETAILS


_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_0*(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes: dict[int, str] = {}
    for status in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(getattr(rep, "nodeid", "") or "")
            if m:
                n = int(m.group(1))
                # a failed call outranks a passed setup report
                if outcomes.get(n) != "failed":
                    outcomes[n] = status
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 11):
        status = outcomes.get(n)
        if status == "passed":
            line = f"criterion {n}: PASS"
            if n in ACCEPTANCE_DETAILS:
                line += f" ({ACCEPTANCE_DETAILS[n]})"
        elif status is None:
            line = f"criterion {n}: FAIL (not run)"
        else:
            line = f"criterion {n}: FAIL ({status})"
        terminalreporter.write_line(line)
