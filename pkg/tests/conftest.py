import pytest

from sadiclab import numberfield as nf


@pytest.fixture(scope="session")
def rationals():
    return nf.create_field([0, 1])


@pytest.fixture(scope="session")
def gauss():
    return nf.create_field([1, 0, 1])


@pytest.fixture(scope="session")
def root2_field():
    return nf.create_field([-2, 0, 1])


@pytest.fixture(scope="session")
def golden_field():
    return nf.create_field([-1, -1, 1])


@pytest.fixture(scope="session")
def q_inf(rationals):
    return nf.archimedean_places(rationals)


@pytest.fixture(scope="session")
def q_inf2(rationals, q_inf):
    return q_inf + nf.finite_places(rationals, 2)
