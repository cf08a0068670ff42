import pytest

from hkdd import fixtures, linalg
from hkdd.hyperkahler import hilbert_lattice
from hkdd.lattice import make_lattice, verify_isometry


@pytest.fixture(scope="session")
def rank3():
    """The <H1, e, H2> lattice with gram [[4,0,8],[0,-2,0],[8,0,4]]."""
    return fixtures.rank3_lattice()


@pytest.fixture(scope="session")
def quartic_pair():
    return fixtures.quartic_pair_lattice()


@pytest.fixture(scope="session")
def hilb2(quartic_pair):
    return hilbert_lattice(quartic_pair, 2, e_index=1)


@pytest.fixture(scope="session")
def m1():
    return fixtures.m1_matrix()


@pytest.fixture(scope="session")
def m2():
    return fixtures.m2_matrix()


@pytest.fixture(scope="session")
def m1m2(m1, m2):
    return linalg.mat_mul(m1, m2)


@pytest.fixture(scope="session")
def iso_m1m2(rank3, m1m2):
    return verify_isometry(rank3, m1m2)
