from dkhybrid.solvers.fv import FluxField, averaging, deterministic_flux, stochastic_flux, em_step, \
    stability_max_dt, auto_dt, face_fluxes, heat_step
from dkhybrid.solvers.gaussian import mean_step, gaussian_step, GaussianState
