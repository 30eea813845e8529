import pytest

from trimat import algebra as al
from trimat.linalg import QQ


def make_F1():
    return al.truncated_polynomial(QQ, 2, "x", name="F1")


def make_F2():
    return al.truncated_polynomial(QQ, 3, "y", name="F2")


def make_F3(F1, F2):
    return al.Bimodule(F1, F2, [[[1]], [[0]]], [[[1]], [[0]], [[0]]], name="F3")


def make_F4():
    return al.path_algebra(QQ, [1, 2], [("a", 1, 2)], name="F4")


@pytest.fixture(scope="session")
def F1():
    return make_F1()


@pytest.fixture(scope="session")
def F2():
    return make_F2()


@pytest.fixture(scope="session")
def F3(F1, F2):
    return make_F3(F1, F2)


@pytest.fixture(scope="session")
def F4():
    return make_F4()


@pytest.fixture(scope="session")
def F5(F2):
    return al.simple_module(F2, 0)


@pytest.fixture(scope="session")
def k():
    return al.field_algebra(QQ)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
