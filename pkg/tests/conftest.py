import pytest

from helpers import gen

from stallings.words import Alphabet

_ACCEPTANCE: dict[str, tuple[str, float]] = {}


@pytest.fixture(scope="session")
def f1():
    return Alphabet.standard(1)


@pytest.fixture(scope="session")
def f2():
    return Alphabet.standard(2)


@pytest.fixture(scope="session")
def f3():
    return Alphabet.standard(3)


@pytest.fixture(scope="session")
def h_ab2(f2):
    """<a, b^2>, the running example: an a-loop and a b-cycle of length two."""
    return gen(f2, "a", "bb")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::" in report.nodeid:
        _ACCEPTANCE[report.nodeid.split("::")[-1]] = (report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        outcome, duration = _ACCEPTANCE[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f} s)")
