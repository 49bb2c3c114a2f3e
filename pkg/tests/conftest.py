"""Test-session plumbing: print the acceptance verdict lines in the summary."""

from _acceptance_log import lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
