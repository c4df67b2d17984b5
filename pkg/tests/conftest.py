import pytest

from gronwall_u1.primes import sieve_upto
from gronwall_u1.xi import XiTable

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def record_acceptance(criterion: str, passed: bool, detail: str = "") -> None:
    _ACCEPTANCE.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@pytest.fixture(scope="session")
def table():
    return sieve_upto(10**6)


@pytest.fixture(scope="session")
def xi():
    return XiTable()
