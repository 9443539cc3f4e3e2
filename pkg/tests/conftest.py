import re

import pytest

from nnscf import Field, linear_order, poset_from_covers


@pytest.fixture(scope="session")
def F2():
    return Field(2)


@pytest.fixture(scope="session")
def F3():
    return Field(3)


@pytest.fixture(scope="session")
def F4():
    return Field(2, 2, [1, 1, 1])


@pytest.fixture(scope="session")
def hasse6():
    """Six elements with covers 1<3, 1<4, 2<6, 3<6, 4<6, 5<6."""
    return poset_from_covers([str(i) for i in range(1, 7)],
                             [("1", "3"), ("1", "4"), ("2", "6"), ("3", "6"), ("4", "6"), ("5", "6")])


@pytest.fixture(scope="session")
def L3():
    return linear_order(3)


@pytest.fixture(scope="session")
def L4():
    return linear_order(4)


_criteria = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.failed:
        _criteria[key] = "FAIL"
    elif report.when == "call" and key not in _criteria:
        _criteria[key] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), outcome in sorted(_criteria.items()):
        terminalreporter.write_line(f"{outcome} criterion {n}: {name}")
