__author__ = 'dkhybrid developers'

"""Exact equilibrium statistics of independent particles on equal cells,
and the sampling errors of the moment estimators."""

import math

import numpy as np
from scipy import stats

ORDER = 8


def binomial_moments(n_particles, p):
    """Mean, variance, skewness and non-excess kurtosis of Binomial(N, p) cell counts."""
    mean, var, skew, excess = stats.binom.stats(n_particles, p, moments='mvsk')
    return {'mean': float(mean), 'variance': float(var), 'skewness': float(skew), 'kurtosis': float(excess) + 3.0}


def equilibrium_moments(n_particles, n_cells):
    return binomial_moments(n_particles, 1.0 / n_cells)


def binomial_central_moments(n_particles, p, order=ORDER):
    """Central moments mu_0..mu_order of Binomial(N, p), summed over the whole support."""
    k = np.arange(int(n_particles) + 1, dtype=np.float64)
    w = stats.binom.pmf(k, n_particles, p)
    c = k - n_particles * p
    return np.array([float(np.sum(w * c ** r)) for r in range(order + 1)])


def central_moments(samples, order=ORDER):
    """Sample central moments mu_0..mu_order of a flat sample."""
    x = np.asarray(samples, dtype=np.float64).reshape(-1)
    c = x - x.mean()
    return np.array([1.0] + [float(np.mean(c ** r)) for r in range(1, order + 1)])


def _moment_cov(mu, r, s):
    """n times the asymptotic covariance of the sample central moments m_r and m_s."""
    return (mu[r + s] - mu[r] * mu[s] - r * mu[r - 1] * mu[s + 1] - s * mu[r + 1] * mu[s - 1]
            + r * s * mu[r - 1] * mu[s - 1] * mu[2])


def _ratio_error(mu, n, r, power):
    """Delta-method error of m_r / m_2**power."""
    d_r = mu[2] ** -power
    d_2 = -power * mu[r] * mu[2] ** (-power - 1)
    var = d_2 * d_2 * _moment_cov(mu, 2, 2) + d_r * d_r * _moment_cov(mu, r, r) \
        + 2 * d_2 * d_r * _moment_cov(mu, 2, r)
    return math.sqrt(max(var, 0.0) / n)


def moment_standard_errors(n, central=None):
    """Asymptotic standard errors of the sample moments from n independent samples.

    Without ``central`` moments skewness and kurtosis get the Gaussian-limit
    values sqrt(6/n) and sqrt(24/n). With the population central moments
    mu_0..mu_8 all four errors come from the delta method, which is what a
    skewed law such as a low-count binomial needs.
    """
    if central is None:
        return {'skewness': math.sqrt(6.0 / n), 'kurtosis': math.sqrt(24.0 / n)}
    mu = np.asarray(central, dtype=np.float64)
    if len(mu) <= ORDER:
        raise ValueError("need central moments up to order %d, got %d" % (ORDER, len(mu) - 1))
    if not mu[2] > 0:
        raise ValueError("standard errors of a degenerate law are undefined")
    return {'mean': math.sqrt(mu[2] / n),
            'variance': math.sqrt(max(_moment_cov(mu, 2, 2), 0.0) / n),
            'skewness': _ratio_error(mu, n, 3, 1.5),
            'kurtosis': _ratio_error(mu, n, 4, 2.0)}
