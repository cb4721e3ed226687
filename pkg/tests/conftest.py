import pytest

from dkhybrid.grid import GridSpec
from dkhybrid.rng import KeyedRNG
from dkhybrid.runner import SimConfig


@pytest.fixture
def grid1d():
    """100 cells on [0, 1), the grid of the 1D experiments."""
    return GridSpec(1, (100,))


@pytest.fixture
def unit_grid():
    """Three cells of unit width and unit volume."""
    return GridSpec(1, (3,), (3.0,))


@pytest.fixture
def grid2d():
    return GridSpec(2, (16, 16))


@pytest.fixture
def rng():
    return KeyedRNG(20240611)


@pytest.fixture
def make_config(tmp_path):
    """SimConfig factory writing into a fresh temporary directory."""
    def make(**kwargs):
        data = dict(method='fv', dim=1, cells=(20, 1, 1), steps=5, ensemble=3, seed=7,
                    scenario='uniform', scenario_params={'density': 10}, out=str(tmp_path / 'out'))
        data.update(kwargs)
        return SimConfig(**data)
    return make
