import pytest

from squarefibers.ffpoly import field_make


@pytest.fixture(scope="session")
def F3():
    return field_make(3, 1)


@pytest.fixture(scope="session")
def F5():
    return field_make(5, 1)


@pytest.fixture(scope="session")
def F9():
    return field_make(3, 2)


@pytest.fixture(scope="session")
def F25():
    return field_make(5, 2)
