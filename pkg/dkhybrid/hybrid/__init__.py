from dkhybrid.hybrid.region import Box, ParticleRegion, FluxRegister
from dkhybrid.hybrid.coupler import HybridState, sample_particles_from_field, fill_boundary_cells, \
    scaled_face_flux, advance_hybrid_step, synchronize
from dkhybrid.hybrid.regrid import RegridPolicy, tag_cells, cluster, apply_regrid, regrid, initialize_hybrid
