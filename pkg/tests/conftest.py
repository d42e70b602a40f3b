import pytest

from twistedops import jordan


@pytest.fixture(scope="session")
def full1():
    return jordan.make_full(1)


@pytest.fixture(scope="session")
def full2():
    return jordan.make_full(2)


@pytest.fixture(scope="session")
def sym2():
    return jordan.make_sym(2)


@pytest.fixture(scope="session")
def spin3():
    return jordan.make_spin(3)


@pytest.fixture(scope="session")
def spin4():
    return jordan.make_spin(4)


@pytest.fixture(scope="session")
def spin5():
    return jordan.make_spin(5)
