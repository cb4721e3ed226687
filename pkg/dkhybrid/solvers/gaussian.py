__author__ = 'dkhybrid developers'

"""Linearized Gaussian fluctuations around the deterministic mean field."""

import logging

from dkhybrid.grid.model import ScalarField, FaceNoise
from dkhybrid.solvers.fv import FluxField, deterministic_fluxes, stochastic_fluxes, apply_fluxes, check_dt, \
    heat_step

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


def mean_step(qbar: ScalarField, dt):
    if dt <= 0:
        raise ValueError("time step must be positive, got " + str(dt))
    return heat_step(qbar, dt)


def gaussian_step(qG: ScalarField, qbar: ScalarField, noise: FaceNoise, dt):
    """Advance the fluctuating field; noise amplitude comes from ``qbar`` only."""
    if qG.grid.shape != qbar.grid.shape or noise.grid.shape != qG.grid.shape:
        raise ValueError("shape mismatch between fluctuating field, mean field and noise")
    check_dt(qG.grid, dt)
    fluxes = FluxField(qG.grid, deterministic_fluxes(qG.values, qG.grid), stochastic_fluxes(qbar.values, noise, dt))
    return apply_fluxes(qG, fluxes, dt)


class GaussianState(object):
    """Mean field and fluctuating field kept at the same time level."""

    def __init__(self, mean: ScalarField, fluctuating: ScalarField = None):
        self.mean = mean
        self.fluctuating = fluctuating if fluctuating is not None else mean.copy()

    @property
    def field(self):
        return self.fluctuating

    def advance(self, noise: FaceNoise, dt):
        fluct = gaussian_step(self.fluctuating, self.mean, noise, dt)
        mean = mean_step(self.mean, dt)
        return GaussianState(mean, fluct)
