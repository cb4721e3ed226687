__author__ = 'dkhybrid developers'

"""One ensemble member: a single realization advanced with one of the four methods."""

import logging

from dkhybrid.grid.model import ScalarField, FaceNoise
from dkhybrid.grid.topology import total_mass
from dkhybrid.hybrid.coupler import advance_hybrid_step
from dkhybrid.hybrid.regrid import initialize_hybrid, regrid
from dkhybrid.particles.engine import rw_step, bin_counts
from dkhybrid.rng import KeyedRNG
from dkhybrid.runner.config import SimConfig
from dkhybrid.runner.scenarios import build_scenario
from dkhybrid.solvers.fv import em_step, check_dt
from dkhybrid.solvers.gaussian import GaussianState

logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


class MemberResult(object):
    """What a member sends back to the parent.

    :param index: member index in the ensemble
    :param samples: absolute step -> field values recorded at that step
    :param mass: rows (step, total_mass, negative_cell_count, min_value, rounding_mass, ghost_rounding, member)
    :param regions: rows (step, box_id, lo_i, lo_j, lo_k, hi_i, hi_j, hi_k, member)
    """

    def __init__(self, index):
        self.index = index
        self.samples = {}
        self.mass = []
        self.regions = []


class Member(object):
    """Base of the per-method members; subclasses implement ``start`` and ``advance``."""

    method = None

    def __init__(self, config: SimConfig, index):
        self.config = config
        self.index = index
        self.grid = config.grid
        self.dt = config.time_step
        self.rng = KeyedRNG(config.seed).member(index)
        self.step = 0
        self.scenario = build_scenario(config.scenario, config.scenario_params, self.grid)

    @property
    def field(self) -> ScalarField:
        raise NotImplementedError

    def start(self):
        raise NotImplementedError

    def advance(self):
        raise NotImplementedError

    @property
    def rounding(self):
        return 0.0, 0.0

    def region_rows(self):
        return []

    def mass_row(self):
        f = self.field
        rounding, ghost = self.rounding
        return (self.step, total_mass(f), f.negative_count, f.min_value, rounding, ghost, self.index)


class ParticleMember(Member):
    method = 'particle'

    def start(self):
        self.particles = self.scenario.initial_particles(self.rng)

    @property
    def field(self):
        return bin_counts(self.particles)

    def advance(self):
        self.particles = rw_step(self.particles, self.dt, self.rng, self.step)
        self.step += 1


class FVMember(Member):
    method = 'fv'

    def start(self):
        check_dt(self.grid, self.dt)
        self.q = self.scenario.initial_field(self.rng)

    @property
    def field(self):
        return self.q

    def advance(self):
        noise = FaceNoise.draw(self.grid, self.rng, self.step)
        self.q = em_step(self.q, noise, self.dt)
        self.step += 1


class GaussianMember(Member):
    method = 'gaussian'

    def start(self):
        check_dt(self.grid, self.dt)
        self.state = GaussianState(self.scenario.field.copy(), self.scenario.initial_field(self.rng))

    @property
    def field(self):
        return self.state.field

    def advance(self):
        noise = FaceNoise.draw(self.grid, self.rng, self.step)
        self.state = self.state.advance(noise, self.dt)
        self.step += 1


class HybridMember(Member):
    method = 'hybrid'

    def start(self):
        check_dt(self.grid, self.dt)
        self.policy = self.config.policy
        particles = self.scenario.initial_particles(self.rng)
        self.state = initialize_hybrid(self.scenario.initial_field(self.rng), self.policy, self.rng, particles)
        self._regions = self._boxes_rows()

    @property
    def field(self):
        return self.state.field

    @property
    def rounding(self):
        return self.state.rounding_mass, self.state.ghost_rounding

    def _boxes_rows(self):
        rows = []
        for n, box in enumerate(self.state.region.boxes):
            rows.append((self.state.step, n) + tuple(box.lo) + tuple(box.hi) + (self.index,))
        if not rows:
            # an empty region is still an event
            rows.append((self.state.step, -1) + (-1,) * 6 + (self.index,))
        return rows

    def advance(self):
        self.state = advance_hybrid_step(self.state, self.dt, self.rng)
        self.step = self.state.step
        if self.policy.due(self.step):
            self.state = regrid(self.state, self.policy, self.rng)
            self._regions.extend(self._boxes_rows())

    def region_rows(self):
        rows, self._regions = self._regions, []
        return rows


MEMBERS = {m.method: m for m in (ParticleMember, FVMember, GaussianMember, HybridMember)}


def member_for(config: SimConfig, index):
    return MEMBERS[config.method](config, index)


def run_member(config: SimConfig, index):
    """Advance member ``index`` through burn-in and the recorded steps."""
    member = member_for(config, index)
    member.start()
    result = MemberResult(index)
    record = set(config.recorded_steps())
    record.add(config.pdf_step)
    last = config.burn_in + config.total_steps
    if config.pdf_step > last:
        raise ValueError("histogram_step %d is after the last step %d" % (config.pdf_step, last))

    while True:
        if member.step in record:
            result.samples[member.step] = member.field.values.copy()
            result.mass.append(member.mass_row())
        result.regions.extend(member.region_rows())
        if member.step >= last:
            break
        member.advance()
    logger.debug("member %d finished after %d steps (%s)", index, member.step, config.method)
    return result
