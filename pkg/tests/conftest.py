import numpy as np
import pytest

from entangled_gup.pair_state import GridSpec


@pytest.fixture(scope="session")
def grid():
    return GridSpec(-32.0, 32.0, 512)


@pytest.fixture(scope="session")
def small_grid():
    return GridSpec(-24.0, 24.0, 256)


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)
