import numpy as np
import pytest

from ginicor import build_dataset
from ginicor.datasets import load_iris


@pytest.fixture(scope="session")
def iris():
    return load_iris()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_grouped_dataset(rng, n=None, d=1, k=None, ties=False):
    """A random labeled dataset where every class has at least two members."""
    n = int(rng.integers(8, 40)) if n is None else n
    k = int(rng.integers(2, 5)) if k is None else k
    while True:
        codes = rng.integers(0, k, size=n)
        if np.bincount(codes, minlength=k).min() >= 2:
            break
    if ties:
        values = rng.integers(0, 6, size=(n, d)).astype(float)
    else:
        values = rng.normal(size=(n, d))
    return build_dataset(values, codes)
