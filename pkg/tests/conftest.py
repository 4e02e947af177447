import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def complex_gaussian(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, n):
    G = complex_gaussian(rng, n, n)
    return 0.5 * (G + G.conj().T)


def random_unitary(rng, n):
    Q, R = np.linalg.qr(complex_gaussian(rng, n, n))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def shift(n):
    return np.eye(n, k=-1, dtype=np.complex128)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
