from __future__ import annotations

import re

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.failed:
        _outcomes[n] = "FAIL"  # a failure in any phase sticks
    elif report.when == "call" or report.skipped:
        _outcomes.setdefault(n, "PASS" if report.passed else "SKIP")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {n}: {_outcomes[n]}")
