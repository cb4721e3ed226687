import math

import numpy as np
import pytest

from dkhybrid.stats import (MomentAccumulator, Histogram, pdf_histogram, binomial_moments, binomial_central_moments,
                            central_moments, equilibrium_moments, moment_standard_errors)


def _accumulate(samples, shape=(1, 1, 1)):
    acc = MomentAccumulator(shape)
    for s in samples:
        acc.accumulate(np.full(shape, s) if np.ndim(s) == 0 else s)
    return acc


def test_two_samples():
    m = _accumulate([0.0, 2.0]).finalize()
    assert m['mean'][0, 0, 0] == pytest.approx(1.0)
    assert m['variance'][0, 0, 0] == pytest.approx(1.0)


def test_constant_samples_have_undefined_shape_moments():
    m = _accumulate([5.0] * 10).finalize()
    assert m['variance'][0, 0, 0] == 0.0
    assert math.isnan(m['skewness'][0, 0, 0])
    assert math.isnan(m['kurtosis'][0, 0, 0])


def test_finalize_needs_two_samples():
    with pytest.raises(ValueError):
        _accumulate([1.0]).finalize()


def test_shape_mismatch():
    with pytest.raises(ValueError):
        MomentAccumulator((2, 1, 1)).accumulate(np.zeros((3, 1, 1)))


def test_moments_match_direct_formulas():
    x = np.random.default_rng(4).gamma(2.0, 3.0, size=5000)
    m = _accumulate(x).finalize()
    c = x - x.mean()
    m2 = np.mean(c ** 2)
    assert m['variance'][0, 0, 0] == pytest.approx(m2, rel=1e-10)
    assert m['skewness'][0, 0, 0] == pytest.approx(np.mean(c ** 3) / m2 ** 1.5, rel=1e-9)
    assert m['kurtosis'][0, 0, 0] == pytest.approx(np.mean(c ** 4) / m2 ** 2, rel=1e-9)


def test_sample_order_does_not_matter():
    x = np.random.default_rng(5).poisson(3.0, size=(400, 4, 1, 1)).astype(float)
    a = _accumulate(x, (4, 1, 1)).finalize()
    b = _accumulate(x[np.random.default_rng(6).permutation(400)], (4, 1, 1)).finalize()
    for key in ('mean', 'variance', 'skewness', 'kurtosis'):
        assert np.allclose(a[key], b[key], rtol=1e-12, atol=1e-12)


def test_merged_shards_equal_single_pass():
    x = np.random.default_rng(7).exponential(2.0, size=(900, 3, 2, 1))
    whole = _accumulate(x, (3, 2, 1)).finalize()
    merged = _accumulate(x[:100], (3, 2, 1)) + _accumulate(x[100:650], (3, 2, 1)) \
        + _accumulate(x[650:], (3, 2, 1))
    assert merged.n == 900
    out = merged.finalize()
    for key in ('mean', 'variance', 'skewness', 'kurtosis'):
        assert np.allclose(out[key], whole[key], rtol=1e-10, atol=0)


def test_merge_with_empty_accumulator():
    acc = _accumulate([1.0, 2.0, 4.0])
    assert (MomentAccumulator((1, 1, 1)) + acc).finalize()['variance'] == pytest.approx(
        acc.finalize()['variance'])


def test_pooled_equals_flattened_samples():
    x = np.random.default_rng(8).poisson(5.0, size=(300, 6, 1, 1)).astype(float)
    pooled = _accumulate(x, (6, 1, 1)).pooled().finalize()
    flat = _accumulate(x.reshape(-1)).finalize()
    assert pooled['n'] == 1800
    for key in ('mean', 'variance', 'skewness', 'kurtosis'):
        assert float(pooled[key]) == pytest.approx(float(flat[key][0, 0, 0]), rel=1e-10)


def test_gaussian_sample_moments():
    n = 100000
    x = np.random.default_rng(9).normal(10.0, 2.0, size=n)
    acc = MomentAccumulator(())
    for chunk in np.array_split(x, 50):
        part = MomentAccumulator(())
        for v in chunk:
            part.accumulate(np.asarray(v))
        acc = acc + part
    m = acc.finalize()
    se = moment_standard_errors(n)
    assert abs(float(m['skewness'])) < 4 * se['skewness']
    assert abs(float(m['kurtosis']) - 3.0) < 4 * se['kurtosis']


def test_histogram_bins_are_one_particle_wide():
    h = pdf_histogram([-30.0, 0.0, 49.0, 51.0, 100.0, 300.0], 0.01)
    assert h.k_min == 0 and h.k_max == 3
    assert h.counts.tolist() == [3, 2, 0, 1]
    assert h.total == 6
    assert h.edges[0] == pytest.approx(-50.0)


def test_particle_samples_sit_on_bin_centres():
    vc = 0.01
    counts = np.random.default_rng(10).binomial(500, 0.01, size=1000)
    h = pdf_histogram(counts / vc, vc)
    assert np.array_equal(h.centers_particles, np.arange(counts.min(), counts.max() + 1))
    assert h.probabilities().sum() == pytest.approx(1.0)
    assert h.counts.tolist() == np.bincount(counts - counts.min()).tolist()


def test_histogram_underflow_and_negative_bins():
    h = Histogram(0.01, -2, 2).add([-300.0, -160.0, -40.0, 0.0, 180.0, 260.0])
    assert h.underflow == 1
    assert h.overflow == 1
    assert h.counts.tolist() == [1, 0, 2, 0, 1]
    assert h.total == 6


def test_binomial_oracle():
    m = binomial_moments(500, 0.01)
    assert m['mean'] == pytest.approx(5.0)
    assert m['variance'] == pytest.approx(4.95)
    assert m['skewness'] == pytest.approx(0.4405, abs=5e-4)
    assert m['kurtosis'] == pytest.approx(3.190, abs=5e-4)
    low = equilibrium_moments(100, 100)
    assert low['skewness'] == pytest.approx(0.985, abs=1e-3)
    assert low['kurtosis'] == pytest.approx(3.95, abs=1e-3)


def test_binomial_central_moments_agree_with_the_oracle():
    mu = binomial_central_moments(500, 0.01)
    m = binomial_moments(500, 0.01)
    assert mu[0] == pytest.approx(1.0)
    assert mu[1] == pytest.approx(0.0, abs=1e-10)
    assert mu[2] == pytest.approx(m['variance'])
    assert mu[3] / mu[2] ** 1.5 == pytest.approx(m['skewness'])
    assert mu[4] / mu[2] ** 2 == pytest.approx(m['kurtosis'])


def test_sample_central_moments():
    x = np.array([1.0, 2.0, 3.0, 6.0])
    mu = central_moments(x)
    assert len(mu) == 9
    assert mu[1] == pytest.approx(0.0, abs=1e-12)
    assert mu[2] == pytest.approx(np.var(x))
    assert mu[3] == pytest.approx(np.mean((x - 3.0) ** 3))


def test_standard_errors_of_a_gaussian_law():
    gaussian = [1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0, 0.0, 105.0]
    se = moment_standard_errors(10000, gaussian)
    assert se['mean'] == pytest.approx(0.01)
    assert se['variance'] == pytest.approx(math.sqrt(2e-4))
    assert se['skewness'] == pytest.approx(math.sqrt(6e-4))
    assert se['kurtosis'] == pytest.approx(math.sqrt(24e-4))
    assert moment_standard_errors(10000) == {'skewness': math.sqrt(6e-4), 'kurtosis': math.sqrt(24e-4)}


def test_skewed_laws_have_wider_errors():
    se = moment_standard_errors(10000, binomial_central_moments(100, 0.01))
    assert se['mean'] == pytest.approx(math.sqrt(0.99 / 10000))
    assert se['kurtosis'] > 2 * math.sqrt(24e-4)


def test_standard_errors_match_the_spread_of_replicates():
    n = 2000
    x = np.random.default_rng(11).binomial(100, 0.01, size=(1000, n)).astype(float)
    c = x - x.mean(axis=1, keepdims=True)
    m2 = np.mean(c ** 2, axis=1)
    skew = np.mean(c ** 3, axis=1) / m2 ** 1.5
    kurt = np.mean(c ** 4, axis=1) / m2 ** 2
    se = moment_standard_errors(n, binomial_central_moments(100, 0.01))
    assert np.std(m2) == pytest.approx(se['variance'], rel=0.1)
    assert np.std(skew) == pytest.approx(se['skewness'], rel=0.15)
    assert np.std(kurt) == pytest.approx(se['kurtosis'], rel=0.15)


@pytest.mark.parametrize('central', [[1.0, 0.0, 1.0, 0.0, 3.0], [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]])
def test_standard_errors_reject_bad_moments(central):
    with pytest.raises(ValueError):
        moment_standard_errors(100, central)
