__author__ = 'dkhybrid developers'

import logging
import math

import numpy as np

from dkhybrid.grid.model import GridSpec, ScalarField, FaceNoise
from dkhybrid.grid.topology import neighbor

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

AUTO_DT_FRACTION = 0.25


class FluxField(object):
    """Face fluxes per axis; index (i,j,k) is the face on the high side of the cell.

    A positive flux moves particles from the high-side cell into the low-side cell,
    matching the update q_i += dt*(F_{i+1/2} - F_{i-1/2})/dx.
    """

    def __init__(self, grid: GridSpec, deterministic, stochastic):
        self.grid = grid
        self.deterministic = deterministic
        self.stochastic = stochastic
        self.total = [d + s for d, s in zip(deterministic, stochastic)]

    def divergence(self):
        h = self.grid.spacing
        out = np.zeros(self.grid.shape)
        for a in range(self.grid.dim):
            F = self.total[a]
            out += (F - np.roll(F, 1, axis=a)) / h[a]
        return out


def averaging(q1, q2):
    """Face amplitude of the stochastic flux, (sqrt(q1+) + sqrt(q2+))/2."""
    return 0.5 * (np.sqrt(np.maximum(q1, 0.0)) + np.sqrt(np.maximum(q2, 0.0)))


def stability_max_dt(grid: GridSpec):
    h = grid.spacing
    return 1.0 / sum(1.0 / (h[a] * h[a]) for a in range(grid.dim))


def auto_dt(grid: GridSpec):
    return AUTO_DT_FRACTION * stability_max_dt(grid)


def _wall_mask(grid: GridSpec, axis):
    # faces on the physical boundary of a Neumann axis carry no flux
    m = np.ones(grid.shape)
    if not grid.is_periodic(axis):
        idx = [slice(None)] * 3
        idx[axis] = grid.cells[axis] - 1
        m[tuple(idx)] = 0.0
    return m


def deterministic_flux(f: ScalarField, face):
    """Deterministic flux at ``face = (cell, axis)``, the face on the high side of ``cell``."""
    cell, axis = face
    grid = f.grid
    cell = tuple(cell) + (0,) * (3 - len(cell))
    right = neighbor(cell, axis, +1, grid)
    if right is None:
        return 0.0
    h = grid.spacing[axis]
    return (f.values[right] - f.values[cell]) / (2.0 * h)


def stochastic_flux(f: ScalarField, face, z, dt):
    """A(q_L, q_R) * z / sqrt(dt*Vc) at ``face = (cell, axis)``."""
    if dt <= 0:
        raise ValueError("time step must be positive, got " + str(dt))
    cell, axis = face
    grid = f.grid
    cell = tuple(cell) + (0,) * (3 - len(cell))
    right = neighbor(cell, axis, +1, grid)
    if right is None:
        return 0.0
    return float(averaging(f.values[cell], f.values[right])) * z / math.sqrt(dt * grid.cell_volume)


def deterministic_fluxes(q, grid: GridSpec):
    h = grid.spacing
    out = []
    for a in range(3):
        if a < grid.dim:
            out.append((np.roll(q, -1, axis=a) - q) / (2.0 * h[a]) * _wall_mask(grid, a))
        else:
            out.append(np.zeros(grid.shape))
    return out


def stochastic_fluxes(amplitude_field, noise: FaceNoise, dt):
    """Stochastic face fluxes whose amplitude is taken from ``amplitude_field``."""
    grid = noise.grid
    if dt <= 0:
        raise ValueError("time step must be positive, got " + str(dt))
    if amplitude_field.shape != grid.shape:
        raise ValueError("noise shape %s does not match field shape %s" % (grid.shape, amplitude_field.shape))
    scale = 1.0 / math.sqrt(dt * grid.cell_volume)
    out = []
    for a in range(3):
        if a < grid.dim:
            amp = averaging(amplitude_field, np.roll(amplitude_field, -1, axis=a))
            out.append(amp * noise.draws[a] * scale * _wall_mask(grid, a))
        else:
            out.append(np.zeros(grid.shape))
    return out


def face_fluxes(f: ScalarField, noise: FaceNoise, dt):
    if noise.grid.shape != f.grid.shape:
        raise ValueError("noise shape %s does not match grid %s" % (noise.grid.shape, f.grid.shape))
    return FluxField(f.grid, deterministic_fluxes(f.values, f.grid), stochastic_fluxes(f.values, noise, dt))


def check_dt(grid: GridSpec, dt):
    if dt <= 0:
        raise ValueError("time step must be positive, got " + str(dt))
    limit = stability_max_dt(grid)
    if dt > limit:
        logger.warning("time step %g exceeds the explicit diffusion limit %g", dt, limit)


def apply_fluxes(f: ScalarField, fluxes: FluxField, dt):
    return ScalarField(f.grid, f.values + dt * fluxes.divergence())


def em_step(f: ScalarField, noise: FaceNoise, dt, fluxes_out=None):
    """One Euler-Maruyama step of the number-density equation in flux form.

    Negative values are kept; only the noise amplitude clips at zero.

    :param fluxes_out: optional list receiving the FluxField used for the step
    """
    check_dt(f.grid, dt)
    fluxes = face_fluxes(f, noise, dt)
    if fluxes_out is not None:
        fluxes_out.append(fluxes)
    return apply_fluxes(f, fluxes, dt)


def heat_step(f: ScalarField, dt):
    """Noise-free step, the hydrodynamic mean-field update."""
    check_dt(f.grid, dt)
    zero = [np.zeros(f.grid.shape) for _ in range(3)]
    fluxes = FluxField(f.grid, deterministic_fluxes(f.values, f.grid), zero)
    return apply_fluxes(f, fluxes, dt)
