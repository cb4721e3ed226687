__author__ = 'dkhybrid developers'

import logging
import math

import numpy as np

from dkhybrid.grid.model import GridSpec, ScalarField
from dkhybrid.grid.topology import wrap_positions, halo
from dkhybrid.particles.model import ParticleSet, CrossingRecord
from dkhybrid.rng import KeyedRNG, TAG_PARTICLE, TAG_INIT

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

MAX_SLOTS = 1 << 16


def displacements(ids, dt, rng: KeyedRNG, step, grid: GridSpec):
    """Normal(0, dt) increments per coordinate, clamped to one cell spacing."""
    out = np.zeros((len(ids), 3))
    if len(ids) == 0:
        return out
    z = rng.normals(TAG_PARTICLE, ids, 0, step, grid.dim)
    sd = math.sqrt(dt)
    for a in range(grid.dim):
        h = grid.spacing[a]
        out[:, a] = np.clip(sd * z[:, a], -h, h)
    return out


def rw_step(p: ParticleSet, dt, rng: KeyedRNG, step=0):
    """Random-walk step; the increment of particle i depends only on (seed, step, id)."""
    if dt <= 0:
        raise ValueError("time step must be positive, got " + str(dt))
    if len(p) == 0:
        return ParticleSet(p.grid)
    x = p.positions + displacements(p.ids, dt, rng, step, p.grid)
    return ParticleSet(p.grid, p.ids.copy(), wrap_positions(x, p.grid))


def bin_counts(p: ParticleSet, grid: GridSpec = None):
    grid = grid if grid is not None else p.grid
    counts = np.bincount(p.linear_cells(), minlength=grid.num_cells).astype(np.float64)
    return ScalarField(grid, counts.reshape(grid.shape) / grid.cell_volume)


def record_crossings(before: ParticleSet, after: ParticleSet, region_mask=None):
    """Start->end cell transfers of particles starting in the region or its halo.

    :param region_mask: boolean cell mask; None records every moving particle
    """
    if len(before) != len(after) or not np.array_equal(before.ids, after.ids):
        raise ValueError("particle ids differ between before and after")
    grid = before.grid
    src = before.linear_cells()
    dst = after.linear_cells()
    moved = src != dst
    if region_mask is not None:
        mask = np.asarray(region_mask, dtype=bool)
        watched = (mask | halo(mask, grid)).reshape(-1)
        moved &= watched[src]
    return CrossingRecord(grid, src[moved], dst[moved])


def slots_for(counts):
    """Within-cell slot number for each of sum(counts) particles."""
    counts = np.asarray(counts, dtype=np.int64)
    total = int(counts.sum())
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    return np.arange(total, dtype=np.int64) - starts


def place_in_cells(grid: GridSpec, cells_lin, counts, rng: KeyedRNG, tag, step, first_id):
    """Put ``counts[c]`` particles uniformly in cell ``cells_lin[c]``.

    Positions are keyed by (tag, cell, slot, step); ids are consecutive from
    ``first_id`` in the order of ``cells_lin``.
    """
    cells_lin = np.asarray(cells_lin, dtype=np.int64)
    counts = np.asarray(counts, dtype=np.int64)
    if counts.size and counts.max() >= MAX_SLOTS:
        raise ValueError("too many particles in one cell: %d" % counts.max())
    cell_of = np.repeat(cells_lin, counts)
    slot = slots_for(counts)
    n = cell_of.shape[0]
    ids = np.arange(first_id, first_id + n, dtype=np.uint64)
    if n == 0:
        return ParticleSet(grid, ids, np.zeros((0, 3)))
    u = rng.uniforms(tag, cell_of.astype(np.uint64), (slot + 1).astype(np.uint64), step, grid.dim)
    ijk = np.stack(np.unravel_index(cell_of, grid.shape), axis=1)
    pos = np.zeros((n, 3))
    for a in range(3):
        h = grid.spacing[a]
        if a < grid.dim:
            pos[:, a] = (ijk[:, a] + u[:, a]) * h
        else:
            pos[:, a] = 0.5 * h
    return ParticleSet(grid, ids, wrap_positions(pos, grid))


def place_exact_counts(f: ScalarField, rng: KeyedRNG, first_id=0):
    """Particle realization with round(q*Vc) particles in every cell."""
    grid = f.grid
    target = f.particles_per_cell().reshape(-1)
    counts = np.floor(target + 0.5).astype(np.int64)
    if np.any(np.abs(counts - target) > 1e-9):
        logger.info("non-integer cell counts rounded; mass change %g", float(counts.sum() - target.sum()))
    counts = np.maximum(counts, 0)
    return place_in_cells(grid, np.arange(grid.num_cells), counts, rng, TAG_INIT, 0, first_id)


def place_uniform_domain(grid: GridSpec, n, rng: KeyedRNG, first_id=0):
    """N particles i.i.d. uniform over the whole domain."""
    ids = np.arange(first_id, first_id + n, dtype=np.uint64)
    pos = np.zeros((n, 3))
    if n:
        u = rng.uniforms(TAG_INIT, ids, 0, 0, grid.dim)
        for a in range(3):
            pos[:, a] = u[:, a] * grid.extents[a] if a < grid.dim else 0.5
    p = ParticleSet(grid, ids, wrap_positions(pos, grid))
    # keep cell-major ordering, like the per-cell placement
    order = np.argsort(p.linear_cells(), kind='stable')
    return ParticleSet(grid, ids, p.positions[order])
