import pytest

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance_log():
    """Record one summary line per acceptance criterion."""
    def record(number: int, passed: bool, detail: str, seconds: float, limit: float):
        status = "PASS" if passed and seconds <= limit else "FAIL"
        line = f"criterion {number:>2}: {status}  {detail}  [{seconds:.1f} s / limit {limit:g} s]"
        _ACCEPTANCE[number] = line
        print(line)
        return status == "PASS"
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[k])
