__author__ = 'dkhybrid developers'

"""Hybrid time step: SPDE everywhere, particles in the region, then synchronization."""

import logging

import numpy as np

from dkhybrid.grid.model import GridSpec, ScalarField, FaceNoise
from dkhybrid.grid.topology import shift_mask
from dkhybrid.hybrid.region import ParticleRegion, FluxRegister
from dkhybrid.particles.engine import MAX_SLOTS, bin_counts, place_in_cells, record_crossings, rw_step, slots_for
from dkhybrid.particles.model import ParticleSet
from dkhybrid.rng import KeyedRNG, TAG_GHOST, TAG_SAMPLE
from dkhybrid.solvers.fv import em_step

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

GHOST_ID_BASE = 1 << 46
SNAP = 1e-9


def target_counts(f: ScalarField, cells_lin):
    """Non-negative expected particle counts of the listed cells."""
    t = f.particles_per_cell().reshape(-1)[cells_lin]
    if np.any(t < 0):
        logger.info("clipping %d negative cells (%.6g particles) before sampling",
                    int(np.count_nonzero(t < 0)), float(-t[t < 0].sum()))
        t = np.maximum(t, 0.0)
    r = np.round(t)
    return np.where(np.abs(t - r) < SNAP, r, t)


def sample_counts(targets, cells_lin, rng: KeyedRNG, tag, step):
    """floor(t) particles plus one more with probability frac(t)."""
    whole = np.floor(targets)
    alpha = targets - whole
    if len(cells_lin) == 0:
        return whole.astype(np.int64)
    u = rng.uniforms(tag, np.asarray(cells_lin, dtype=np.uint64), 0, step, 1)[:, 0]
    return (whole + (u < alpha)).astype(np.int64)


def sample_particles_from_field(f: ScalarField, cells, rng: KeyedRNG, step=0, first_id=0, tag=TAG_SAMPLE):
    """Conditional sampling of a particle realization consistent with ``f`` on ``cells``.

    :param cells: boolean mask or array of linear cell indices
    """
    cells_lin = _as_linear(cells, f.grid)
    targets = target_counts(f, cells_lin)
    counts = sample_counts(targets, cells_lin, rng, tag, step)
    drift = float(counts.sum() - targets.sum())
    if drift != 0.0:
        logger.debug("step %d: probabilistic rounding added %+.6g particles in %d cells", step, drift, len(cells_lin))
    return place_in_cells(f.grid, cells_lin, counts, rng, tag, step, first_id)


def fill_boundary_cells(f: ScalarField, region: ParticleRegion, rng: KeyedRNG, step=0):
    """Ghost particles in the one-cell halo of the region.

    Ghost counts and positions are keyed by (step, cell), and ghost ids by
    (cell, slot), so every patch touching a halo cell sees the same ghosts.
    """
    grid = f.grid
    cells_lin = np.flatnonzero(region.halo.reshape(-1))
    targets = target_counts(f, cells_lin)
    counts = sample_counts(targets, cells_lin, rng, TAG_GHOST, step)
    ghosts = place_in_cells(grid, cells_lin, counts, rng, TAG_GHOST, step, 0)
    ghosts.ids = (GHOST_ID_BASE + np.repeat(cells_lin, counts) * MAX_SLOTS + slots_for(counts)).astype(np.uint64)
    return ghosts


def scaled_face_flux(F, dt, face_area):
    """Particles carried across a face in one step by total flux ``F``."""
    return dt * face_area * F


def spde_received(fluxes, region_mask, dt):
    """Per cell, the particle-equivalents the SPDE step moved in from particle cells across faces."""
    grid = fluxes.grid
    out = np.zeros(grid.shape)
    for a in range(grid.dim):
        e = [0, 0, 0]
        e[a] = 1
        scaled = scaled_face_flux(fluxes.total[a], dt, grid.face_area(a))
        from_high = shift_mask(region_mask, tuple(e), grid)
        from_low = shift_mask(region_mask, tuple(-v for v in e), grid)
        out += np.where(from_high, scaled, 0.0)
        out -= np.where(from_low, np.roll(scaled, 1, axis=a), 0.0)
    return out


def synchronize(qstar: ScalarField, region: ParticleRegion, binned: ScalarField, reg: FluxRegister):
    """Composite field: particle cells from particles, halo cells refluxed, the rest from SPDE."""
    if not reg.covers(region):
        raise ValueError("flux register does not match the particle region")
    out = qstar.values.copy()
    out[region.mask] = binned.values[region.mask]
    out[region.halo] += reg.correction()[region.halo]
    return ScalarField(qstar.grid, out)


class HybridState(object):
    """Composite state: SPDE field everywhere plus owned particles in the region.

    ``rounding_mass`` is the cumulative realized-minus-expected particle count of
    initial and regrid sampling; it equals the change of total mass.
    ``ghost_rounding`` is the same count for boundary-cell filling and never
    changes total mass.
    """

    def __init__(self, field: ScalarField, particles: ParticleSet, region: ParticleRegion, step=0, next_id=None):
        self.field = field
        self.particles = particles
        self.region = region
        self.step = step
        if next_id is None:
            next_id = int(particles.ids.max()) + 1 if len(particles) else 0
        self.next_id = next_id
        self.rounding_mass = 0.0
        self.ghost_rounding = 0.0

    @property
    def grid(self):
        return self.field.grid

    def copy_with(self, **kw):
        s = HybridState(kw.get('field', self.field), kw.get('particles', self.particles),
                        kw.get('region', self.region), kw.get('step', self.step), kw.get('next_id', self.next_id))
        s.rounding_mass = kw.get('rounding_mass', self.rounding_mass)
        s.ghost_rounding = kw.get('ghost_rounding', self.ghost_rounding)
        return s

    def is_consistent(self):
        if self.region.is_empty:
            return len(self.particles) == 0
        binned = bin_counts(self.particles).values
        return bool(np.array_equal(binned[self.region.mask], self.field.values[self.region.mask]))


def advance_hybrid_step(state: HybridState, dt, rng: KeyedRNG):
    grid = state.grid
    step = state.step
    noise = FaceNoise.draw(grid, rng, step)
    fluxes = []
    qstar = em_step(state.field, noise, dt, fluxes)
    region = state.region
    if region.is_empty:
        return state.copy_with(field=qstar, step=step + 1)

    reg = FluxRegister(grid, region.mask, region.halo)
    reg.add_spde(spde_received(fluxes[0], region.mask, dt))

    ghosts = fill_boundary_cells(state.field, region, rng, step)
    # diagnostic only: the register debits the halo for every ghost that enters, so mass is unchanged
    ghost_drift = len(ghosts) - float(target_counts(state.field, np.flatnonzero(region.halo.reshape(-1))).sum())
    movers = state.particles.concat(ghosts)
    moved = rw_step(movers, dt, rng, step)
    crossings = record_crossings(movers, moved, region.mask)
    reg.add_crossings(crossings.received(region.mask, region.halo))

    owned = moved.in_mask(region.mask)
    converted = owned.ids >= GHOST_ID_BASE
    next_id = state.next_id
    if np.any(converted):
        # ghosts that entered the region become owned particles
        idx = np.flatnonzero(converted)
        order = idx[np.argsort(owned.ids[idx], kind='stable')]
        owned.ids[order] = np.arange(next_id, next_id + len(order), dtype=np.uint64)
        next_id += len(order)

    field = synchronize(qstar, region, bin_counts(owned), reg)
    return state.copy_with(field=field, particles=owned, step=step + 1, next_id=next_id,
                           ghost_rounding=state.ghost_rounding + ghost_drift)


def _as_linear(cells, grid: GridSpec):
    cells = np.asarray(cells)
    if cells.dtype == bool:
        return np.flatnonzero(cells.reshape(-1))
    if cells.ndim == 2:
        return np.ravel_multi_index(tuple(cells[:, a] for a in range(3)), grid.shape)
    return cells.astype(np.int64)
