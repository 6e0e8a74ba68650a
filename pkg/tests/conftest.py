import pytest

from aqcc.gf import FiniteField


@pytest.fixture(scope="session")
def gf2():
    return FiniteField.get(2, 1)


@pytest.fixture(scope="session")
def gf16():
    return FiniteField.get(2, 4)


@pytest.fixture(scope="session")
def gf256():
    return FiniteField.get(2, 8)


@pytest.fixture(scope="session")
def gf11():
    return FiniteField.get(11, 1)
