import pytest

from closurelab.fileio import shipped_algebra
from closurelab.proplab import generate_battery


@pytest.fixture(scope="session")
def a_x2():
    return shipped_algebra("f2_x2")


@pytest.fixture(scope="session")
def a_x3():
    return shipped_algebra("f2_x3")


@pytest.fixture(scope="session")
def a_xy():
    return shipped_algebra("f2_xy")


@pytest.fixture(scope="session")
def algebras(a_x2, a_x3, a_xy):
    return [("f2_x2", a_x2), ("f2_x3", a_x3), ("f2_xy", a_xy)]


@pytest.fixture(scope="session")
def b_x2(a_x2):
    return generate_battery(a_x2, seed=0)


@pytest.fixture(scope="session")
def b_x3(a_x3):
    return generate_battery(a_x3, seed=0)


@pytest.fixture(scope="session")
def b_xy(a_xy):
    return generate_battery(a_xy, seed=0)


@pytest.fixture(scope="session")
def batteries(b_x2, b_x3, b_xy):
    return [("f2_x2", b_x2), ("f2_x3", b_x3), ("f2_xy", b_xy)]
