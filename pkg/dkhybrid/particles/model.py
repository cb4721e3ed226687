__author__ = 'dkhybrid developers'

from collections import namedtuple

import numpy as np

from dkhybrid.grid.model import GridSpec
from dkhybrid.grid.topology import cell_indices, linear_index

Particle = namedtuple('Particle', ['id', 'position'])


class ParticleSet(object):
    """Point particles stored as parallel arrays of ids and (n, 3) positions."""

    def __init__(self, grid: GridSpec, ids=None, positions=None):
        self.grid = grid
        if ids is None:
            ids = np.zeros(0, dtype=np.uint64)
        if positions is None:
            positions = np.zeros((0, 3), dtype=np.float64)
        self.ids = np.asarray(ids, dtype=np.uint64).reshape(-1)
        self.positions = np.asarray(positions, dtype=np.float64).reshape(-1, 3)
        if self.ids.shape[0] != self.positions.shape[0]:
            raise ValueError("ids and positions differ in length")

    @staticmethod
    def empty(grid: GridSpec):
        return ParticleSet(grid)

    def __len__(self):
        return int(self.ids.shape[0])

    def __iter__(self):
        for i in range(len(self)):
            yield Particle(int(self.ids[i]), self.positions[i, :self.grid.dim].copy())

    def __repr__(self):
        return 'ParticleSet(n=%d)' % len(self)

    def cells(self):
        return cell_indices(self.positions, self.grid) if len(self) else np.zeros((0, 3), dtype=np.int64)

    def linear_cells(self):
        if len(self) == 0:
            return np.zeros(0, dtype=np.int64)
        return linear_index(self.cells(), self.grid)

    def select(self, keep):
        keep = np.asarray(keep)
        return ParticleSet(self.grid, self.ids[keep], self.positions[keep])

    def in_mask(self, mask):
        """Particles whose cell is set in the boolean cell mask."""
        if len(self) == 0:
            return self.select(np.zeros(0, dtype=bool))
        return self.select(np.asarray(mask).reshape(-1)[self.linear_cells()])

    def concat(self, other):
        return ParticleSet(self.grid,
                           np.concatenate([self.ids, other.ids]),
                           np.concatenate([self.positions, other.positions]))

    def sorted(self):
        order = np.argsort(self.ids, kind='stable')
        return self.select(order)

    def equals(self, other):
        return len(self) == len(other) and np.array_equal(self.ids, other.ids) \
            and np.array_equal(self.positions, other.positions)


class CrossingRecord(object):
    """Cell-to-cell transfers of one step, one entry per moving particle.

    Entries are linear cell indices; ``net(a, b)`` is the signed count from a to b.
    """

    def __init__(self, grid: GridSpec, src=None, dst=None):
        self.grid = grid
        self.src = np.zeros(0, dtype=np.int64) if src is None else np.asarray(src, dtype=np.int64)
        self.dst = np.zeros(0, dtype=np.int64) if dst is None else np.asarray(dst, dtype=np.int64)

    def __len__(self):
        return int(self.src.shape[0])

    def _lin(self, cell):
        if np.isscalar(cell):
            return int(cell)
        cell = tuple(cell) + (0,) * (3 - len(cell))
        return int(np.ravel_multi_index(cell, self.grid.shape))

    def net(self, a, b):
        a = self._lin(a)
        b = self._lin(b)
        forward = np.count_nonzero((self.src == a) & (self.dst == b))
        backward = np.count_nonzero((self.src == b) & (self.dst == a))
        return int(forward - backward)

    def pairs(self):
        """Net transfer per unordered pair, keyed by (low, high) linear index."""
        out = {}
        for s, d in zip(self.src.tolist(), self.dst.tolist()):
            key = (s, d) if s < d else (d, s)
            out[key] = out.get(key, 0) + (1 if s < d else -1)
        return {k: v for k, v in out.items() if v != 0}

    def received(self, mask_from, mask_to):
        """Per-cell net count received by cells in ``mask_to`` from cells in ``mask_from``."""
        n = self.grid.num_cells
        mf = np.asarray(mask_from).reshape(-1)
        mt = np.asarray(mask_to).reshape(-1)
        gain = np.zeros(n)
        inbound = mf[self.src] & mt[self.dst]
        outbound = mt[self.src] & mf[self.dst]
        np.add.at(gain, self.dst[inbound], 1.0)
        np.add.at(gain, self.src[outbound], -1.0)
        return gain.reshape(self.grid.shape)
