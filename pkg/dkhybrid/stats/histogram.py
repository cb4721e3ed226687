__author__ = 'dkhybrid developers'

import numpy as np


class Histogram(object):
    """Counts in one-particle-wide bins [(k-1/2)/Vc, (k+1/2)/Vc) for k_min..k_max."""

    def __init__(self, cell_volume, k_min, k_max):
        if cell_volume <= 0:
            raise ValueError("cell volume must be positive")
        self.cell_volume = float(cell_volume)
        self.k_min = int(k_min)
        self.k_max = int(k_max)
        self.counts = np.zeros(self.k_max - self.k_min + 1, dtype=np.int64)
        self.underflow = 0
        self.overflow = 0

    @property
    def edges(self):
        return (np.arange(self.k_min, self.k_max + 2) - 0.5) / self.cell_volume

    @property
    def centers_particles(self):
        return np.arange(self.k_min, self.k_max + 1)

    @property
    def total(self):
        return int(self.counts.sum()) + self.underflow + self.overflow

    def add(self, samples):
        q = np.asarray(samples, dtype=np.float64).reshape(-1)
        k = np.floor(q * self.cell_volume + 0.5).astype(np.int64)
        self.underflow += int(np.count_nonzero(k < self.k_min))
        self.overflow += int(np.count_nonzero(k > self.k_max))
        inside = k[(k >= self.k_min) & (k <= self.k_max)]
        self.counts += np.bincount(inside - self.k_min, minlength=len(self.counts))
        return self

    def probabilities(self):
        total = self.total
        if total == 0:
            return np.zeros(len(self.counts))
        return self.counts / float(total)


def pdf_histogram(samples, cell_volume, k_min=None, k_max=None):
    """Histogram of field samples in particle-width bins centred at k/Vc."""
    q = np.asarray(samples, dtype=np.float64).reshape(-1)
    k = np.floor(q * cell_volume + 0.5).astype(np.int64)
    if k_min is None:
        k_min = int(k.min()) if k.size else 0
    if k_max is None:
        k_max = int(k.max()) if k.size else 0
    return Histogram(cell_volume, k_min, k_max).add(q)
