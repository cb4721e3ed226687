import numpy as np
import pytest

from dkhybrid.runner import EnsembleRunner
from dkhybrid.solvers import auto_dt
from dkhybrid.stats import (MomentAccumulator, binomial_moments, binomial_central_moments, central_moments,
                            moment_standard_errors)

pytestmark = pytest.mark.slow

CELLS = 100


def _ppc_moments(m, vc):
    """Density moments converted to particles per cell."""
    return {'n': m['n'], 'mean': float(m['mean']) * vc, 'variance': float(m['variance']) * vc * vc,
            'skewness': float(m['skewness']), 'kurtosis': float(m['kurtosis'])}


def _pooled_over_steps(stats):
    acc = MomentAccumulator(())
    for step in sorted(stats.accumulators):
        acc = acc + stats.accumulators[step].pooled()
    return _ppc_moments(acc.finalize(), stats.grid.cell_volume)


def _equilibrium_run(make_config, method, density, dt, ensemble, records=0, **kwargs):
    """Ensemble started from the equilibrium draw, burnt in for t = 0.005, then sampled every t = 7.5e-4."""
    every = int(round(7.5e-4 / dt))
    config = make_config(method=method, cells=(CELLS, 1, 1), dt=dt, burn_in=int(round(0.005 / dt)),
                         steps=records * every, output_every=every if records else 0, ensemble=ensemble,
                         workers=4, scenario_params={'density': density, 'placement': 'domain'}, **kwargs)
    return EnsembleRunner(config).execute()


@pytest.mark.parametrize('n_particles', [100, 500, 1000, 2000, 5000])
def test_particle_equilibrium_matches_the_binomial_law(make_config, n_particles):
    # one cell per particle start; t = 1 spreads every particle uniformly over the unit torus
    config = make_config(method='particle', cells=(CELLS, 1, 1), dt=0.01, burn_in=100, steps=0, ensemble=200,
                         workers=4, scenario_params={'density': n_particles / CELLS})
    stats = EnsembleRunner(config).execute()
    got = _ppc_moments(stats.pooled_moments(100), config.grid.cell_volume)
    assert got['n'] == 200 * CELLS
    exact = binomial_moments(n_particles, 1.0 / CELLS)
    se = moment_standard_errors(got['n'], binomial_central_moments(n_particles, 1.0 / CELLS))
    assert got['mean'] == pytest.approx(exact['mean'], rel=1e-9)
    for key in ('variance', 'skewness', 'kurtosis'):
        assert got[key] == pytest.approx(exact[key], abs=4 * se[key]), key


@pytest.mark.parametrize('density', [1, 5, 20, 50])
def test_gaussian_method_stays_gaussian(make_config, density):
    config = make_config(method='gaussian', cells=(CELLS, 1, 1), ensemble=200, steps=0, burn_in=400,
                         workers=4, scenario_params={'density': density})
    stats = EnsembleRunner(config).execute()
    pooled = stats.pooled_moments(400)
    se = moment_standard_errors(200 * CELLS)
    assert abs(float(pooled['skewness'])) < 4 * se['skewness']
    assert abs(float(pooled['kurtosis']) - 3.0) < 4 * se['kurtosis']


def test_fv_shape_agrees_with_the_particles_at_high_density(make_config):
    dt = auto_dt(make_config(cells=(CELLS, 1, 1)).grid) / 4
    got = _pooled_over_steps(_equilibrium_run(make_config, 'fv', 20, dt, ensemble=50, records=200))
    exact = binomial_moments(20 * CELLS, 1.0 / CELLS)
    assert got['skewness'] == pytest.approx(exact['skewness'], rel=0.15)
    assert got['kurtosis'] == pytest.approx(exact['kurtosis'], rel=0.15)


def test_fv_shape_breaks_down_at_one_particle_per_cell(make_config):
    dt = auto_dt(make_config(cells=(CELLS, 1, 1)).grid) / 4
    stats = _equilibrium_run(make_config, 'fv', 1, dt, ensemble=200)
    samples = np.concatenate(stats.pdf_samples) * stats.grid.cell_volume
    mu = central_moments(samples)
    se = moment_standard_errors(samples.size, mu)
    exact = binomial_moments(CELLS, 1.0 / CELLS)
    skew = mu[3] / mu[2] ** 1.5
    kurt = mu[4] / mu[2] ** 2
    assert abs(skew - exact['skewness']) > 4 * se['skewness'] or abs(kurt - exact['kurtosis']) > 4 * se['kurtosis']
    assert sum(row[2] for row in stats.mass) > 0
    assert np.min(samples) < 0


def test_fv_stays_positive_at_fifty_particles_per_cell(make_config):
    stats = _equilibrium_run(make_config, 'fv', 50, auto_dt(make_config(cells=(CELLS, 1, 1)).grid),
                             ensemble=20, records=200)
    assert len(stats.mass) == 20 * 201
    assert all(row[2] == 0 for row in stats.mass)


def test_fv_variance_error_is_first_order_in_dt(make_config):
    # at 200 particles per cell the error is dominated by the time step
    density = 200
    base = auto_dt(make_config(cells=(CELLS, 1, 1)).grid) / 2
    exact = binomial_moments(density * CELLS, 1.0 / CELLS)
    runs = [_pooled_over_steps(_equilibrium_run(make_config, 'fv', density, dt, ensemble=200, records=150))
            for dt in (base, base / 2)]
    errors = [r['variance'] - exact['variance'] for r in runs]
    assert errors[0] > errors[1] > 0
    assert errors[0] / errors[1] == pytest.approx(2.0, abs=0.4)

    # consecutive records keep a little correlation, counted as halving the sample
    se = moment_standard_errors(runs[0]['n'] / 2, binomial_central_moments(density * CELLS, 1.0 / CELLS))
    for key in ('skewness', 'kurtosis'):
        assert abs(runs[0][key] - runs[1][key]) < 4 * np.sqrt(2.0) * se[key], key
