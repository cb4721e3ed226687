__author__ = 'dkhybrid developers'

"""Initial conditions of the standard experiments.

Densities are given in particles per cell and converted to number density
with the cell volume of the grid.
"""

import logging

import numpy as np

from dkhybrid.grid.model import GridSpec, ScalarField
from dkhybrid.particles.engine import place_exact_counts, place_uniform_domain, bin_counts

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)

PLACEMENTS = ('cells', 'domain')


class Scenario(object):
    """Initial field of an experiment plus the rule that realizes its particles.

    :param name: scenario name
    :param field: initial number density
    :param placement: 'cells' puts round(q*Vc) particles in every cell, 'domain'
        draws the same total number i.i.d. uniform over the whole domain
    """

    def __init__(self, name, field: ScalarField, placement='cells'):
        if placement not in PLACEMENTS:
            raise ValueError("placement must be one of %s, got '%s'" % (', '.join(PLACEMENTS), placement))
        if field.min_value < 0:
            raise ValueError("initial field of scenario '%s' is negative" % name)
        self.name = name
        self.field = field
        self.placement = placement
        self.particles = None

    @property
    def grid(self):
        return self.field.grid

    @property
    def num_particles(self):
        return int(np.floor(self.field.particles_per_cell().sum() + 0.5))

    def initial_particles(self, rng):
        if self.placement == 'domain':
            return place_uniform_domain(self.grid, self.num_particles, rng)
        return place_exact_counts(self.field, rng)

    def initial_field(self, rng):
        """Starting field: the binned particle draw for 'domain' placement, the scenario field otherwise."""
        if self.placement == 'domain':
            return bin_counts(self.initial_particles(rng))
        return self.field.copy()

    def __repr__(self):
        return "Scenario(%s, %d particles, placement=%s)" % (self.name, self.num_particles, self.placement)


class _Params(object):
    """Typed access to string scenario parameters; unused keys are an error."""

    def __init__(self, name, params):
        self.name = name
        self.params = dict(params or {})
        self.used = set()

    def number(self, key, default):
        self.used.add(key)
        return float(self.params.get(key, default))

    def text(self, key, default):
        self.used.add(key)
        return str(self.params.get(key, default)).strip()

    def check(self):
        unknown = sorted(set(self.params) - self.used)
        if unknown:
            raise ValueError("Unknown parameter(s) for scenario '%s': %s" % (self.name, ', '.join(unknown)))


def _density(grid: GridSpec, particles_per_cell):
    return particles_per_cell / grid.cell_volume


def _check_inside(grid: GridSpec, center, semi_axes, name):
    for a in range(grid.dim):
        lo, hi = center[a] - semi_axes[a], center[a] + semi_axes[a]
        if semi_axes[a] < 0 or lo < 0 or hi > grid.extents[a]:
            raise ValueError("%s of scenario geometry leaves the domain along axis %d" % (name, a))


def _inside(grid: GridSpec, center, semi_axes):
    """Cells whose centre lies in the axis-aligned ellipsoid."""
    r = np.zeros(grid.shape)
    for a in range(grid.dim):
        x = grid.centers(a) - center[a]
        shape = [1, 1, 1]
        shape[a] = grid.shape[a]
        if semi_axes[a] == 0:
            return np.zeros(grid.shape, dtype=bool)
        r = r + (x.reshape(shape) / semi_axes[a]) ** 2
    return r <= 1.0


def void_1d(grid: GridSpec, p: _Params):
    if grid.dim != 1:
        raise ValueError("scenario '1d_void' needs a 1D grid")
    lo = p.number('void_lo', 0.25)
    hi = p.number('void_hi', 0.75)
    density = p.number('density', 20.0)
    if not 0 <= lo <= hi <= grid.extents[0]:
        raise ValueError("void interval [%g, %g] is outside the domain" % (lo, hi))
    x = grid.centers(0)
    q = np.where((x >= lo) & (x <= hi), 0.0, _density(grid, density))
    return q.reshape(grid.shape)


def nested_regions(grid: GridSpec, p: _Params, radii):
    """Inner region, void shell and background for ellipses (2D) and spheres (3D)."""
    center = tuple(p.number('center_' + 'xyz'[a], grid.extents[a] / 2.0) for a in range(grid.dim))
    inner = radii('inner')
    outer = radii('outer')
    _check_inside(grid, center, outer, 'outer region')
    if any(i > o for i, o in zip(inner, outer)):
        raise ValueError("inner region must fit inside the outer region")
    inner_density = p.number('inner_density', 15.0)
    void_density = p.number('void_density', 0.0)
    background = p.number('background_density', 30.0)

    ppc = np.full(grid.shape, background)
    ppc[_inside(grid, center, outer)] = void_density
    ppc[_inside(grid, center, inner)] = inner_density
    return ppc / grid.cell_volume


def ellipses_2d(grid: GridSpec, p: _Params):
    if grid.dim != 2:
        raise ValueError("scenario '2d_ellipses' needs a 2D grid")
    defaults = {'inner': (0.07, 0.05), 'outer': (0.35, 0.3)}

    def radii(which):
        return tuple(p.number('%s_%s' % (which, ab), defaults[which][a]) for a, ab in enumerate('ab'))

    return nested_regions(grid, p, radii)


def spheres_3d(grid: GridSpec, p: _Params):
    if grid.dim != 3:
        raise ValueError("scenario '3d_spheres' needs a 3D grid")
    defaults = {'inner': 0.125, 'outer': 0.44}

    def radii(which):
        r = p.number('%s_radius' % which, defaults[which])
        return (r, r, r)

    return nested_regions(grid, p, radii)


def uniform(grid: GridSpec, p: _Params):
    return np.full(grid.shape, _density(grid, p.number('density', 5.0)))


SCENARIOS = {
    '1d_void': void_1d,
    '2d_ellipses': ellipses_2d,
    '3d_spheres': spheres_3d,
    'uniform': uniform
}


def build_scenario(name, params, grid: GridSpec, rng=None):
    """Initial state of a named experiment.

    When ``rng`` is given the particle realization is drawn too and kept in
    ``scenario.particles``.
    """
    if name not in SCENARIOS:
        raise ValueError("Unknown scenario '%s', expected one of %s" % (name, ', '.join(sorted(SCENARIOS))))
    p = _Params(name, params)
    placement = p.text('placement', 'cells')
    values = SCENARIOS[name](grid, p)
    p.check()
    scenario = Scenario(name, ScalarField(grid, values), placement)
    if rng is not None:
        scenario.particles = scenario.initial_particles(rng)
    logger.debug("built %s", scenario)
    return scenario
