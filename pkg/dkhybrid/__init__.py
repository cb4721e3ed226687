__version__ = '0.1.0'

from dkhybrid.rng import KeyedRNG
from dkhybrid.grid import GridSpec, ScalarField, FaceNoise, BoundaryType
from dkhybrid.particles import ParticleSet, CrossingRecord
from dkhybrid.hybrid import HybridState, ParticleRegion, RegridPolicy
from dkhybrid.stats import MomentAccumulator, Histogram
from dkhybrid.runner import SimConfig, EnsembleRunner, run
