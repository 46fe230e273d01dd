import pytest

_LINES = []


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str, elapsed: float):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {detail}  ({elapsed:.2f} s)"
        _LINES.append((number, line))
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_LINES):
            terminalreporter.write_line(line)
