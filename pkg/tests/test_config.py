import json

import pytest

from dkhybrid.runner import SimConfig
from dkhybrid.solvers import auto_dt

CONFIG_TEXT = """
# 1D void, desk scale
method = hybrid
dim = 1
cells = 100,1,1
dt = auto
steps = 40
ensemble = 4
seed = 99
theta = 5
regrid_interval = 0
scenario = 1d_void
scenario.density = 20
out = runs/void
"""


def test_parse_key_value_text():
    config = SimConfig.parse_text(CONFIG_TEXT)
    assert config.method == 'hybrid'
    assert config.cells == (100, 1, 1)
    assert config.dt == 'auto'
    assert config.time_step == pytest.approx(auto_dt(config.grid))
    assert config.scenario_params == {'density': '20'}
    assert config.policy.threshold == 5.0
    assert config.policy.interval == 0


def test_echoed_config_reproduces_the_run(tmp_path):
    config = SimConfig.parse_text(CONFIG_TEXT)
    path = str(tmp_path / 'config.txt')
    config.effective().dump(path)
    echoed = SimConfig.load(path)
    assert echoed == config.effective()
    assert echoed.time_step == config.time_step
    assert SimConfig.parse_text(echoed.to_text()) == echoed


def test_json_config(tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps({'method': 'fv', 'dim': 2, 'cells': [8, 8, 1], 'dt': 1e-4,
                                'scenario': 'uniform', 'scenario_params': {'density': 5}}))
    config = SimConfig.load(str(path))
    assert config.grid.shape == (8, 8, 1)
    assert config.time_step == 1e-4
    assert SimConfig.load_from_json(config.to_json()) == config


@pytest.mark.parametrize('text, error', [
    ('method = spectral', ValueError),
    ('colour = blue', KeyError),
    ('steps', ValueError),
    ('dt = -1', ValueError),
    ('ensemble = 0', ValueError),
    ('efficiency = 2', ValueError),
    ('dim = 1\ncells = 10,4', ValueError),
])
def test_invalid_configs(text, error):
    with pytest.raises(error):
        SimConfig.parse_text(text)


def test_overrides():
    config = SimConfig.parse_text(CONFIG_TEXT).override(method='fv', cells='50,1,1', steps=3, seed=None)
    assert config.method == 'fv'
    assert config.cells == (50, 1, 1)
    assert config.steps == 3
    assert config.seed == 99
    with pytest.raises(KeyError):
        config.override(colour='blue')


def test_t_end_snaps_to_whole_steps():
    config = SimConfig(dt=1e-4, t_end=0.00102, steps=1)
    assert config.total_steps == 10
    assert config.effective().steps == config.total_steps
    assert config.effective().t_end is None


def test_recorded_steps():
    assert SimConfig(steps=10, output_every=4, burn_in=5).recorded_steps() == [5, 9, 13, 15]
    assert SimConfig(steps=10).recorded_steps() == [10]
    assert SimConfig(steps=10, histogram_step=3).pdf_step == 3
