"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

from __future__ import annotations

import re

from hypothesis import settings

settings.register_profile("fuselift", deadline=None, max_examples=60)
settings.load_profile("fuselift")

_ACCEPTANCE: dict[str, tuple[str, str]] = {}
_NAME = re.compile(r"test_acceptance\.py::test_(A\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m:
        return
    crit, title = m.group(1), m.group(2).replace("_", " ")
    if report.when == "call" or report.outcome != "passed":
        prev = _ACCEPTANCE.get(crit, (None, ""))[0]
        outcome = "FAIL" if report.outcome != "passed" or prev == "FAIL" else "PASS"
        _ACCEPTANCE[crit] = (outcome, title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE, key=lambda c: int(c[1:])):
        outcome, title = _ACCEPTANCE[crit]
        terminalreporter.write_line(f"{crit}  {outcome}  {title}")
