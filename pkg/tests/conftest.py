import pytest

_acceptance_lines = []


@pytest.fixture
def report_line():
    """Record a one-line acceptance verdict for the terminal summary."""

    def record(name, passed, detail):
        _acceptance_lines.append(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
        print(_acceptance_lines[-1])

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
