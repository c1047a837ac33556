import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    def record(number, description, ok):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {description}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
