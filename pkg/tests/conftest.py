import pytest

from totref.rings import FiniteLocalRing, GradedMonomialRing
from totref.zerodiv import exact_pair


@pytest.fixture(scope="session")
def z9():
    return FiniteLocalRing(3, 2)


@pytest.fixture(scope="session")
def z8():
    return FiniteLocalRing(2, 3)


@pytest.fixture(scope="session")
def f5():
    return GradedMonomialRing(5, ("x", "y", "z"), ((1, 1, 0),))


@pytest.fixture(scope="session")
def pair_z9(z9):
    return exact_pair(z9, z9.parse("3"), z9.parse("3"))


@pytest.fixture(scope="session")
def pair_z8(z8):
    return exact_pair(z8, z8.parse("2"), z8.parse("4"))


@pytest.fixture(scope="session")
def pair_f5(f5):
    return exact_pair(f5, f5.parse("x"), f5.parse("y"), 8)
