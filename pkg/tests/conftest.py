import numpy as np
import pytest

from app.models.numerics import Grid1D


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def unit_grid():
    """[0, 1] with dx = 1/10"""
    return Grid1D.unit_interval(0.1)
