import numpy as np
import pytest

from padicq import gates
from padicq.modp import make_context


@pytest.fixture(scope="session")
def ctx3():
    return make_context(3)


@pytest.fixture(scope="session")
def ctx5():
    return make_context(5)


@pytest.fixture(scope="session")
def ctx7():
    return make_context(7)


@pytest.fixture(scope="session")
def u2():
    return gates.u2_rep()


@pytest.fixture(scope="session")
def u4():
    return gates.u4_rep()


@pytest.fixture(scope="session")
def u2_b38(u2):
    return gates.rebase(u2, gates.BASIS_B38, "b38")


@pytest.fixture(scope="session")
def u4_b1(u4):
    return gates.rebase(u4, gates.BASIS_B1, "b1")


@pytest.fixture(scope="session")
def u4_b40(u4):
    return gates.rebase(u4, gates.BASIS_B40, "b40")


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240611)


def random_unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_rotation(rng, n):
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    if np.linalg.det(q) < 0:
        q[:, [0, 1]] = q[:, [1, 0]]
    return q
