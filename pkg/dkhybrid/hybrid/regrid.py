__author__ = 'dkhybrid developers'

import logging

import numpy as np

from dkhybrid.grid.model import ScalarField
from dkhybrid.grid.topology import dilate
from dkhybrid.hybrid.coupler import HybridState, sample_particles_from_field
from dkhybrid.hybrid.region import Box, ParticleRegion
from dkhybrid.particles.engine import bin_counts
from dkhybrid.particles.model import ParticleSet
from dkhybrid.rng import KeyedRNG, TAG_SAMPLE

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


class RegridPolicy(object):
    """When and where the particle description is switched on.

    :param threshold: tag cells holding fewer particles than this
    :param buffer: tag dilation width in cells
    :param efficiency: minimum tagged fraction of a clustered box
    :param interval: steps between regrids, 0 keeps the initial region
    """

    def __init__(self, threshold=10.0, buffer=1, efficiency=0.7, interval=10):
        if threshold < 0:
            raise ValueError("threshold must be non-negative")
        if not 0.0 < efficiency <= 1.0:
            raise ValueError("efficiency must be in (0, 1]")
        if buffer < 0 or interval < 0:
            raise ValueError("buffer and interval must be non-negative")
        self.threshold = float(threshold)
        self.buffer = int(buffer)
        self.efficiency = float(efficiency)
        self.interval = int(interval)

    def due(self, step):
        return self.interval > 0 and step > 0 and step % self.interval == 0

    def to_json(self):
        return {'theta': self.threshold, 'buffer': self.buffer,
                'efficiency': self.efficiency, 'regrid_interval': self.interval}


def tag_cells(f: ScalarField, policy: RegridPolicy):
    """Cells with fewer than ``threshold`` particles, dilated by the buffer."""
    if policy.threshold <= 0:
        # theta = 0 switches the particle region off
        return np.zeros(f.grid.shape, dtype=bool)
    tags = f.particles_per_cell() < policy.threshold
    return dilate(tags, f.grid, policy.buffer)


def _hole_cut(sig):
    """Interior zero of a signature closest to its middle."""
    n = len(sig)
    holes = np.flatnonzero(sig[1:-1] == 0) + 1
    if holes.size == 0:
        return None
    mid = (n - 1) / 2.0
    return int(holes[np.argmin(np.abs(holes - mid))])


def _inflection_cut(sig):
    """Cut at the sign change of the discrete Laplacian with the largest jump.

    :return: (cut, strength) or None
    """
    if len(sig) < 4:
        return None
    lap = sig[:-2] - 2 * sig[1:-1] + sig[2:]
    best, strength = None, 0
    for i in range(len(lap) - 1):
        if lap[i] * lap[i + 1] < 0:
            s = abs(int(lap[i + 1]) - int(lap[i]))
            if s > strength:
                # lap[i] sits at signature index i+1
                best, strength = i + 2, s
    if best is None:
        return None
    return best, strength


def _shrink(tags, box):
    sub = tags[box.slices]
    idx = np.nonzero(sub)
    if idx[0].size == 0:
        return None
    lo = tuple(int(l + i.min()) for l, i in zip(box.lo, idx))
    hi = tuple(int(l + i.max()) for l, i in zip(box.lo, idx))
    return Box(lo, hi)


def _split(box, axis, cut):
    left_hi = list(box.hi)
    left_hi[axis] = box.lo[axis] + cut - 1
    right_lo = list(box.lo)
    right_lo[axis] = box.lo[axis] + cut
    return Box(box.lo, tuple(left_hi)), Box(tuple(right_lo), box.hi)


def _cluster(tags, box, efficiency, out):
    box = _shrink(tags, box)
    if box is None:
        return
    sub = tags[box.slices]
    ntag = int(np.count_nonzero(sub))
    if ntag >= efficiency * box.size or box.size == 1:
        out.append(box)
        return
    sigs = [sub.sum(axis=tuple(b for b in range(3) if b != a)) for a in range(3)]
    choice = None
    for a in range(3):
        cut = _hole_cut(sigs[a])
        if cut is not None:
            choice = (a, cut)
            break
    if choice is None:
        best = 0
        for a in range(3):
            found = _inflection_cut(sigs[a])
            if found is not None and found[1] > best:
                choice, best = (a, found[0]), found[1]
    if choice is None:
        a = int(np.argmax(box.shape))
        choice = (a, box.shape[a] // 2)
    left, right = _split(box, *choice)
    _cluster(tags, left, efficiency, out)
    _cluster(tags, right, efficiency, out)


def cluster(tags, efficiency):
    """Berger-Rigoutsos clustering of a tag mask into disjoint boxes.

    Every tagged cell ends up in exactly one box and every multi-cell box has a
    tagged fraction of at least ``efficiency``.
    """
    tags = np.asarray(tags, dtype=bool)
    if tags.ndim != 3:
        tags = tags.reshape(tags.shape + (1,) * (3 - tags.ndim))
    out = []
    whole = Box((0, 0, 0), tuple(n - 1 for n in tags.shape))
    _cluster(tags, whole, efficiency, out)
    return out


def apply_regrid(state: HybridState, new_boxes, rng: KeyedRNG):
    """Move the state onto a new particle region.

    Persisting cells keep their particles, entering cells are sampled from the
    field, leaving cells keep their binned value in the field.
    """
    grid = state.grid
    new_region = ParticleRegion(grid, new_boxes)
    old_mask = state.region.mask
    if new_region.same_as(state.region):
        return state
    kept = state.particles.in_mask(new_region.mask)
    entering = new_region.mask & ~old_mask
    field = state.field
    rounding = state.rounding_mass
    next_id = state.next_id
    if np.any(entering):
        cells_lin = np.flatnonzero(entering.reshape(-1))
        sampled = sample_particles_from_field(field, cells_lin, rng, state.step, next_id, TAG_SAMPLE)
        next_id += len(sampled)
        expected_mass = float(field.particles_per_cell().reshape(-1)[cells_lin].sum())
        rounding += len(sampled) - expected_mass
        values = field.values.copy()
        values[entering] = bin_counts(sampled).values[entering]
        field = ScalarField(grid, values)
        kept = kept.concat(sampled)
    logger.info("regrid at step %d: %d boxes, %d particle cells, %d particles",
                state.step, len(new_region.boxes), new_region.cell_count, len(kept))
    return state.copy_with(field=field, particles=kept, region=new_region, next_id=next_id,
                           rounding_mass=rounding)


def regrid(state: HybridState, policy: RegridPolicy, rng: KeyedRNG):
    tags = tag_cells(state.field, policy)
    return apply_regrid(state, cluster(tags, policy.efficiency), rng)


def initialize_hybrid(field: ScalarField, policy: RegridPolicy, rng: KeyedRNG, particles: ParticleSet = None):
    """Initial composite state from an SPDE field and, optionally, a particle description.

    The region comes from tagging the field; when ``particles`` is given the region
    is filled with those particles, otherwise it is sampled from the field.
    """
    grid = field.grid
    region = ParticleRegion(grid, cluster(tag_cells(field, policy), policy.efficiency))
    values = field.values.copy()
    if particles is not None:
        owned = particles.in_mask(region.mask)
        next_id = int(particles.ids.max()) + 1 if len(particles) else 0
    else:
        cells_lin = np.flatnonzero(region.mask.reshape(-1))
        owned = sample_particles_from_field(field, cells_lin, rng, 0, 0, TAG_SAMPLE)
        next_id = len(owned)
    values[region.mask] = bin_counts(owned).values[region.mask]
    rounding = float((values - field.values)[region.mask].sum()) * grid.cell_volume
    state = HybridState(ScalarField(grid, values), owned, region, 0, next_id)
    state.rounding_mass = rounding
    logger.info("initial particle region: %d boxes, %d cells, %d particles",
                len(region.boxes), region.cell_count, len(owned))
    return state
