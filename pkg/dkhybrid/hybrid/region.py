__author__ = 'dkhybrid developers'

from collections import namedtuple

import numpy as np

from dkhybrid.grid.model import GridSpec
from dkhybrid.grid.topology import halo


class Box(namedtuple('Box', ['lo', 'hi'])):
    """Index-space box with inclusive corners."""
    __slots__ = ()

    @property
    def shape(self):
        return tuple(h - l + 1 for l, h in zip(self.lo, self.hi))

    @property
    def size(self):
        s = 1
        for n in self.shape:
            s *= n
        return s

    @property
    def slices(self):
        return tuple(slice(l, h + 1) for l, h in zip(self.lo, self.hi))

    def intersects(self, other):
        return all(l1 <= h2 and l2 <= h1 for l1, h1, l2, h2 in zip(self.lo, self.hi, other.lo, other.hi))

    def to_json(self):
        return {'lo': list(self.lo), 'hi': list(self.hi)}


def boxes_mask(boxes, grid: GridSpec):
    mask = np.zeros(grid.shape, dtype=bool)
    for b in boxes:
        mask[b.slices] = True
    return mask


class ParticleRegion(object):
    """Union of disjoint boxes where particles are the active description."""

    def __init__(self, grid: GridSpec, boxes=None):
        self.grid = grid
        self.boxes = [Box(tuple(b[0]), tuple(b[1])) for b in (boxes or [])]
        for i in range(len(self.boxes)):
            for j in range(i + 1, len(self.boxes)):
                if self.boxes[i].intersects(self.boxes[j]):
                    raise ValueError("region boxes overlap: %s and %s" % (self.boxes[i], self.boxes[j]))
        self.mask = boxes_mask(self.boxes, grid)
        self._halo = None

    @staticmethod
    def empty(grid: GridSpec):
        return ParticleRegion(grid, [])

    @staticmethod
    def full(grid: GridSpec):
        return ParticleRegion(grid, [Box((0, 0, 0), tuple(n - 1 for n in grid.cells))])

    @property
    def halo(self):
        if self._halo is None:
            self._halo = halo(self.mask, self.grid)
        return self._halo

    @property
    def cell_count(self):
        return int(np.count_nonzero(self.mask))

    @property
    def is_empty(self):
        return self.cell_count == 0

    def same_as(self, other):
        return np.array_equal(self.mask, other.mask)

    def __repr__(self):
        return 'ParticleRegion(boxes=%d, cells=%d)' % (len(self.boxes), self.cell_count)


class FluxRegister(object):
    """Per halo cell: SPDE particle-equivalents received across faces with particle
    cells (S1) and net particle crossings received from particle cells (S2)."""

    def __init__(self, grid: GridSpec, region_mask, halo_mask):
        self.grid = grid
        self.region_mask = np.asarray(region_mask, dtype=bool)
        self.halo_mask = np.asarray(halo_mask, dtype=bool)
        self.spde_in = np.zeros(grid.shape)
        self.particles_in = np.zeros(grid.shape)

    def add_spde(self, received):
        self.spde_in += np.where(self.halo_mask, received, 0.0)

    def add_crossings(self, received):
        self.particles_in += np.where(self.halo_mask, received, 0.0)

    def correction(self):
        """Density correction for halo cells: (sum dN - sum F) / Vc."""
        return (self.particles_in - self.spde_in) / self.grid.cell_volume

    def covers(self, region: ParticleRegion):
        return np.array_equal(self.region_mask, region.mask) and np.array_equal(self.halo_mask, region.halo)
