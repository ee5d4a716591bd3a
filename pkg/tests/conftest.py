import numpy as np
import pytest

from eitlens import LevelScheme, TransverseGrid


@pytest.fixture(scope="session")
def levels():
    """Default level scheme: gamma_gr calibrated to 2*pi*100 kHz."""
    return LevelScheme.with_ground_rydberg_width()


@pytest.fixture(scope="session")
def small_grid():
    return TransverseGrid(nx=64, ny=64, lx=512e-6, ly=512e-6)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
