"""Shared pytest configuration.

After the run, prints one pass/fail line per acceptance criterion
(tests named ``test_criterion_NN_...`` in test_acceptance.py).
"""

import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            name = report.location[2]
            match = _CRITERION.match(name)
            if match:
                number = int(match.group(1))
                label = match.group(2).replace("_", " ")
                rows[number] = (label, outcome == "passed")
    if not rows:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(rows):
        label, ok = rows[number]
        word = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d} [{word}] {label}")
