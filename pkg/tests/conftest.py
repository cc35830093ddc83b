import pytest

from goss_iwasawa.algebra import GF, PrimeData


@pytest.fixture(scope="session")
def F3():
    return GF(3)


@pytest.fixture(scope="session")
def F5():
    return GF(5)


@pytest.fixture(scope="session")
def p_theta(F3):
    return PrimeData(F3.theta())


@pytest.fixture(scope="session")
def p_quad(F3):
    """theta^2 + 1 over F_3, the degree-2 desk prime."""
    return PrimeData(F3.poly([1, 0, 1]))
