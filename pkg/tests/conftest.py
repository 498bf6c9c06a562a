"""Echo the acceptance criterion lines in pytest's final summary.

The acceptance tests append one line each to `criterion_lines`; printing
them from a terminal-summary hook keeps them visible under pytest's
default capture, whether the criteria pass or fail.
"""

criterion_lines = []


def pytest_terminal_summary(terminalreporter):
    if criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in criterion_lines:
            terminalreporter.line(line)
