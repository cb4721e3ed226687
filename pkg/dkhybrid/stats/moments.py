__author__ = 'dkhybrid developers'

"""Streaming per-cell central moments through fourth order.

Updates and merges follow the one-pass Welford/Terriberry recurrences, so
shards accumulated in separate workers can be combined exactly.
"""

import numpy as np

VARIANCE_FLOOR = 1e-14


class MomentAccumulator(object):

    def __init__(self, shape):
        self.shape = tuple(shape)
        self.n = 0
        self.M1 = np.zeros(self.shape)
        self.M2 = np.zeros(self.shape)
        self.M3 = np.zeros(self.shape)
        self.M4 = np.zeros(self.shape)

    def accumulate(self, sample):
        x = np.asarray(getattr(sample, 'values', sample), dtype=np.float64)
        if x.shape != self.shape:
            raise ValueError("sample shape %s does not match accumulator shape %s" % (x.shape, self.shape))
        n1 = self.n
        self.n += 1
        n = self.n
        delta = x - self.M1
        delta_n = delta / n
        delta_n2 = delta_n * delta_n
        term1 = delta * delta_n * n1
        self.M1 += delta_n
        self.M4 += term1 * delta_n2 * (n * n - 3 * n + 3) + 6 * delta_n2 * self.M2 - 4 * delta_n * self.M3
        self.M3 += term1 * delta_n * (n - 2) - 3 * delta_n * self.M2
        self.M2 += term1
        return self

    def merge(self, other):
        """Combined accumulator of two disjoint sample sets."""
        if other.shape != self.shape:
            raise ValueError("cannot merge accumulators of different shapes")
        new = MomentAccumulator(self.shape)
        if self.n == 0 or other.n == 0:
            src = other if self.n == 0 else self
            new.n = src.n
            new.M1, new.M2, new.M3, new.M4 = src.M1.copy(), src.M2.copy(), src.M3.copy(), src.M4.copy()
            return new
        a, b = self, other
        na, nb = float(a.n), float(b.n)
        n = na + nb
        delta = b.M1 - a.M1
        delta2 = delta * delta
        delta3 = delta2 * delta
        delta4 = delta2 * delta2
        new.n = a.n + b.n
        new.M1 = (na * a.M1 + nb * b.M1) / n
        new.M2 = a.M2 + b.M2 + delta2 * na * nb / n
        new.M3 = a.M3 + b.M3 + delta3 * na * nb * (na - nb) / (n * n) \
            + 3.0 * delta * (na * b.M2 - nb * a.M2) / n
        new.M4 = a.M4 + b.M4 + delta4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) \
            + 6.0 * delta2 * (na * na * b.M2 + nb * nb * a.M2) / (n * n) \
            + 4.0 * delta * (na * b.M3 - nb * a.M3) / n
        new.M1, new.M2, new.M3, new.M4 = (np.asarray(m, dtype=np.float64) for m in (new.M1, new.M2, new.M3, new.M4))
        return new

    def __add__(self, other):
        return self.merge(other)

    def pooled(self):
        """Scalar accumulator treating every cell's samples as one population."""
        flat = [self._cell(i) for i in range(int(np.prod(self.shape)))]
        total = MomentAccumulator(())
        for acc in flat:
            total = total.merge(acc)
        return total

    def _cell(self, i):
        acc = MomentAccumulator(())
        acc.n = self.n
        acc.M1 = np.asarray(self.M1.reshape(-1)[i])
        acc.M2 = np.asarray(self.M2.reshape(-1)[i])
        acc.M3 = np.asarray(self.M3.reshape(-1)[i])
        acc.M4 = np.asarray(self.M4.reshape(-1)[i])
        return acc

    def finalize(self):
        """Population mean, variance, skewness and (non-excess) kurtosis.

        Cells whose variance is below the floor report NaN skewness and kurtosis.
        """
        if self.n < 2:
            raise ValueError("at least two samples are needed, have %d" % self.n)
        m2 = self.M2 / self.n
        m3 = self.M3 / self.n
        m4 = self.M4 / self.n
        defined = m2 > VARIANCE_FLOOR
        safe = np.where(defined, m2, 1.0)
        skew = np.where(defined, m3 / safe ** 1.5, np.nan)
        kurt = np.where(defined, m4 / (safe * safe), np.nan)
        return {'n': self.n, 'mean': self.M1.copy(), 'variance': m2, 'skewness': skew, 'kurtosis': kurt}
