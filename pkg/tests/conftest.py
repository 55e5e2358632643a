import pytest

from stdma_sched import RadioParams, build_network
from stdma_sched.harness import FIG1_COORDS, FIG2_COORDS

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def exp1():
    return RadioParams.from_db(10, -90, 20, 10, 4)


@pytest.fixture
def exp2():
    return RadioParams.from_db(15, -85, 15, 7, 4)


@pytest.fixture
def fig1():
    return build_network(FIG1_COORDS)


@pytest.fixture
def fig2():
    return build_network(FIG2_COORDS)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
