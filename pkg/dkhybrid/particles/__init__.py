from dkhybrid.particles.model import Particle, ParticleSet, CrossingRecord
from dkhybrid.particles.engine import rw_step, bin_counts, record_crossings, place_in_cells, place_exact_counts, \
    place_uniform_domain
