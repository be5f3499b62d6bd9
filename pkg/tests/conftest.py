import pytest

from rankbench._rng import Rng
from rankbench.linalg import Matrix
from rankbench.loidreau import keygen


def random_full_rank(spec, k, n, rng):
    """Random k x n matrix of full rank k over the given field."""
    while True:
        M = Matrix(spec, [[rng.below(spec.order) for _ in range(n)]
                          for _ in range(k)], n)
        if M.rank() == k:
            return M


@pytest.fixture(scope="session")
def key_12_8():
    return keygen(2, 12, 12, 8, 2, seed=7)


@pytest.fixture(scope="session")
def key_13_10():
    return keygen(2, 13, 13, 10, 3, seed=7)


@pytest.fixture(scope="session")
def key_22_16():
    # table build for F_{2^22} happens once here and is reused session-wide
    return keygen(2, 22, 22, 16, 3, seed=2)


@pytest.fixture(scope="session")
def key_19_14():
    return keygen(2, 19, 19, 14, 3, seed=3)


@pytest.fixture()
def rng():
    return Rng(0xC0FFEE)
