"""Shared test plumbing.

Acceptance tests register one line per criterion here; the terminal summary
hook replays them in order at the end of the run so the pass/fail verdicts
are visible even under plain ``pytest`` output capture.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
