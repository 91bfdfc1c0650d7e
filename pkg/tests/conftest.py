"""Prints one status line per acceptance criterion after the run."""

import re

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.match(report.nodeid.split("::")[-1])
    if match is None:
        return
    num = int(match.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[num] = (report.outcome, report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        outcome, name = _outcomes[num]
        status = "PASS" if outcome == "passed" else outcome.upper().replace("FAILED", "FAIL")
        if status == "FAILED":
            status = "FAIL"
        label = name.replace(f"test_criterion_{num:02d}_", "").replace("_", " ")
        terminalreporter.write_line(f"criterion {num:02d}: {status} - {label}")
