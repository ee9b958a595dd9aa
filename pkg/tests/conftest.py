import pytest

from positroids.poset import build_poset


@pytest.fixture(scope="session")
def poset3():
    return build_poset(3)


@pytest.fixture(scope="session")
def poset4():
    return build_poset(4)


@pytest.fixture(scope="session")
def poset5():
    return build_poset(5)
