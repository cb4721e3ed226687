"""Counter-based random numbers keyed by (seed, stream, position).

Every draw is a pure function of its key, so the same particle, face or cell
produces the same numbers no matter how the work is ordered or split.
The generator is Philox4x32-10, evaluated over numpy uint64 arrays.
"""

__author__ = 'dkhybrid developers'

import numpy as np

TAG_PARTICLE = 1
TAG_FACE = 2
TAG_GHOST = 3
TAG_SAMPLE = 4
TAG_INIT = 5
TAG_MEMBER = 6

_MASK32 = np.uint64(0xFFFFFFFF)
_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = np.uint64(0x9E3779B9)
_W1 = np.uint64(0xBB67AE85)
_ROUNDS = 10


def _split64(x):
    x = np.asarray(x, dtype=np.uint64)
    return x & _MASK32, x >> np.uint64(32)


def philox4x32(c0, c1, c2, c3, k0, k1):
    """Philox4x32-10 block function on broadcastable uint32-valued arrays.

    :return: four uint64 arrays holding 32-bit output words
    """
    c0, c1, c2, c3 = np.broadcast_arrays(*(np.asarray(c, dtype=np.uint64) & _MASK32 for c in (c0, c1, c2, c3)))
    c0, c1, c2, c3 = c0.copy(), c1.copy(), c2.copy(), c3.copy()
    k0 = np.uint64(k0) & _MASK32
    k1 = np.uint64(k1) & _MASK32
    for r in range(_ROUNDS):
        p0 = _M0 * c0
        p1 = _M1 * c2
        hi0, lo0 = p0 >> np.uint64(32), p0 & _MASK32
        hi1, lo1 = p1 >> np.uint64(32), p1 & _MASK32
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
        if r < _ROUNDS - 1:
            k0 = (k0 + _W0) & _MASK32
            k1 = (k1 + _W1) & _MASK32
    return c0, c1, c2, c3


def _to_unit(a, b):
    # 53-bit double in [0, 1)
    return ((a >> np.uint64(5)).astype(np.float64) * 67108864.0
            + (b >> np.uint64(6)).astype(np.float64)) / 9007199254740992.0


class KeyedRNG(object):
    """Stateless random source; all draws are addressed by explicit keys.

    A key is (tag, a, b, step, block): ``a`` is a 64-bit position (particle id,
    face index, cell index), ``b`` a 32-bit sub-position (axis or slot) and
    ``block`` selects successive 4-word blocks for the same key.
    """

    def __init__(self, seed):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._k0 = np.uint64(self.seed & 0xFFFFFFFF)
        self._k1 = np.uint64(self.seed >> 32)

    def __repr__(self):
        return 'KeyedRNG(seed=%d)' % self.seed

    def __eq__(self, other):
        return isinstance(other, KeyedRNG) and self.seed == other.seed

    def __hash__(self):
        return hash(('KeyedRNG', self.seed))

    def member(self, index):
        """Independent stream for ensemble member ``index``."""
        w = philox4x32(np.uint64(index), 0, 0, np.uint64(TAG_MEMBER << 24), self._k0, self._k1)
        seed = (int(w[1]) << 32) | int(w[0])
        return KeyedRNG(seed)

    def _block(self, tag, a, b, step, block):
        a_lo, a_hi = _split64(a)
        c2 = np.asarray(step, dtype=np.uint64)
        c3 = np.uint64(tag << 24) | (np.asarray(block, dtype=np.uint64) & np.uint64(0xFFFFFF))
        # b shares the high word of the position; positions stay below 2**48
        c1 = a_hi | (np.asarray(b, dtype=np.uint64) << np.uint64(16))
        return philox4x32(a_lo, c1, c2, c3, self._k0, self._k1)

    def uniforms(self, tag, a, b, step, n):
        """``n`` uniforms per key, shape ``broadcast(a, b).shape + (n,)``."""
        a = np.asarray(a, dtype=np.uint64)
        b = np.asarray(b, dtype=np.uint64)
        shape = np.broadcast(a, b).shape
        out = np.empty(shape + (n,), dtype=np.float64)
        nblocks = (n + 1) // 2
        for blk in range(nblocks):
            w0, w1, w2, w3 = self._block(tag, a, b, step, blk)
            out[..., 2 * blk] = _to_unit(w0, w1)
            if 2 * blk + 1 < n:
                out[..., 2 * blk + 1] = _to_unit(w2, w3)
        return out

    def normals(self, tag, a, b, step, n):
        """``n`` standard normals per key via Box-Muller."""
        m = n + (n % 2)
        u = self.uniforms(tag, a, b, step, m)
        u1 = 1.0 - u[..., 0::2]
        u2 = u[..., 1::2]
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        z = np.empty(u.shape, dtype=np.float64)
        z[..., 0::2] = r * np.cos(theta)
        z[..., 1::2] = r * np.sin(theta)
        return z[..., :n]
