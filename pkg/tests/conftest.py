import pytest

_LOG: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_log():
    """Record one pass/fail line per acceptance criterion."""

    def record(name: str, ok: bool, detail: str = "") -> bool:
        _LOG.append((name, bool(ok), detail))
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LOG:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _LOG:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
