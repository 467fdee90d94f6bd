import pytest

from linksleep.graph import Topology

ACCEPTANCE = []


@pytest.fixture
def p3():
    return Topology(3, [(0, 1), (1, 2)])


@pytest.fixture
def c4():
    return Topology(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def k4():
    return Topology(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def star3():
    return Topology(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def k2():
    return Topology(2, [(0, 1)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] AC{number:>2} {name}: {detail}")
