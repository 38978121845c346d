import numpy as np
import pytest

from ellpf.nome import Nome


@pytest.fixture
def rng():
    return np.random.default_rng(0xE11)


@pytest.fixture
def nome():
    # a safely elliptic modulus, |p| about 0.037
    return Nome(0.13 + 1.05j)
