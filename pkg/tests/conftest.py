"""Shared pytest hooks: explicit per-criterion PASS/FAIL summary lines."""

import re

_ACCEPTANCE_PATTERN = re.compile(r"test_(a\d+)_")
_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = _ACCEPTANCE_PATTERN.search(report.nodeid)
    if not match or "test_acceptance" not in report.nodeid:
        return
    criterion = match.group(1).upper()
    outcome = "PASS" if report.passed else "FAIL"
    # a criterion split across parametrized cases fails if any case fails
    if _RESULTS.get(criterion) != "FAIL":
        _RESULTS[criterion] = outcome


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for criterion in sorted(_RESULTS, key=lambda c: int(c[1:])):
        terminalreporter.write_line(f"{criterion}: {_RESULTS[criterion]}")
