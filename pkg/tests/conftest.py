"""Prints the acceptance-criterion verdict lines in the run summary.

Capture is fd-level by default, so lines written during a passing test never
reach the terminal; the acceptance module instead collects them and this hook
replays them after the test list.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    for name, mod in sys.modules.items():
        if name.rsplit(".", 1)[-1] != "test_acceptance":
            continue
        lines = getattr(mod, "REPORT_LINES", ())
        if lines:
            terminalreporter.section("acceptance criteria")
            for line in lines:
                terminalreporter.write_line(line)
        break
