import numpy as np
import pytest

from dkhybrid.rng import KeyedRNG, philox4x32, TAG_PARTICLE, TAG_FACE


# Philox4x32-10 known-answer vectors of the Random123 distribution: counter words, key words, output words
KNOWN_ANSWERS = [
    ((0x00000000, 0x00000000, 0x00000000, 0x00000000), (0x00000000, 0x00000000),
     (0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8)),
    ((0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff), (0xffffffff, 0xffffffff),
     (0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd)),
    ((0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344), (0xa4093822, 0x299f31d0),
     (0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1)),
]


@pytest.mark.parametrize('counter, key, expected', KNOWN_ANSWERS)
def test_philox_block_function(counter, key, expected):
    words = philox4x32(*counter, *key)
    assert tuple(int(w) for w in words) == expected


def test_block_function_is_vectorised():
    counters = np.array([0x00000000, 0xffffffff, 0x243f6a88], dtype=np.uint64)
    w0 = philox4x32(counters, 0, 0, 0, 0, 0)[0]
    assert int(w0[0]) == 0x6627e8d5
    assert [int(w) for w in w0[1:]] == [int(philox4x32(c, 0, 0, 0, 0, 0)[0]) for c in counters[1:]]


def test_draws_are_pure_functions_of_their_key():
    rng = KeyedRNG(11)
    ids = np.arange(1000, dtype=np.uint64)
    a = rng.normals(TAG_PARTICLE, ids, 0, 3, 2)
    b = rng.normals(TAG_PARTICLE, ids[::-1], 0, 3, 2)[::-1]
    assert np.array_equal(a, b)
    assert np.array_equal(a[10:20], rng.normals(TAG_PARTICLE, ids[10:20], 0, 3, 2))
    assert not np.array_equal(a, rng.normals(TAG_PARTICLE, ids, 0, 4, 2))
    assert not np.array_equal(a, rng.normals(TAG_FACE, ids, 0, 3, 2))
    assert not np.array_equal(a, KeyedRNG(12).normals(TAG_PARTICLE, ids, 0, 3, 2))


def test_member_streams_differ():
    master = KeyedRNG(5)
    assert master.member(0) == KeyedRNG(5).member(0)
    assert len({master.member(m).seed for m in range(100)}) == 100


def test_uniform_and_normal_ranges():
    rng = KeyedRNG(3)
    u = rng.uniforms(TAG_FACE, np.arange(20000, dtype=np.uint64), 0, 0, 3)
    assert u.shape == (20000, 3)
    assert u.min() >= 0.0 and u.max() < 1.0
    assert u.mean() == pytest.approx(0.5, abs=4 * np.sqrt(1 / 12 / u.size))
    z = rng.normals(TAG_FACE, np.arange(20000, dtype=np.uint64), 1, 0, 2)
    assert np.all(np.isfinite(z))
    assert z.mean() == pytest.approx(0.0, abs=4 / np.sqrt(z.size))
    assert z.var() == pytest.approx(1.0, abs=4 * np.sqrt(2 / z.size))
