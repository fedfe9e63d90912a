import numpy as np
import pytest

from discrete_dirac import BLADES, DiscreteForm, Window


def dirac_gammas():
    """Dirac representation: gamma0^2 = 1, gammai^2 = -1."""
    i2, z2 = np.eye(2), np.zeros((2, 2))
    sig = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    g0 = np.block([[i2, z2], [z2, -i2]]).astype(complex)
    gs = [np.block([[z2, s], [-s, z2]]).astype(complex) for s in sig]
    return [g0] + gs


GAMMAS = dirac_gammas()


def blade_matrix(b):
    out = np.eye(4, dtype=complex)
    for mu in b.indices:
        out = out @ GAMMAS[mu]
    return out


BLADE_MATRICES = [blade_matrix(b) for b in BLADES]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_int_form(rng, n=4, low=-9, high=9):
    return DiscreteForm(rng.integers(low, high + 1, size=(16, n, n, n, n)))


def random_complex_form(rng, n=3):
    shape = (16, n, n, n, n)
    return DiscreteForm(rng.normal(size=shape) + 1j * rng.normal(size=shape))


def random_even_form(rng, n=3):
    arr = random_complex_form(rng, n).coeffs.copy()
    for i, b in enumerate(BLADES):
        if b.grade % 2:
            arr[i] = 0
    return DiscreteForm(arr)
