from dkhybrid.stats.moments import MomentAccumulator
from dkhybrid.stats.histogram import Histogram, pdf_histogram
from dkhybrid.stats.oracle import (binomial_moments, equilibrium_moments, binomial_central_moments,
                                   central_moments, moment_standard_errors)
