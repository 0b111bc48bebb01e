import pytest

ACCEPTANCE_RECORDS: list[str] = []


@pytest.fixture
def acceptance_record():
    """Collect one pass/fail line per acceptance criterion for the summary."""

    def record(line: str) -> None:
        ACCEPTANCE_RECORDS.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RECORDS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RECORDS:
            terminalreporter.write_line(line)
