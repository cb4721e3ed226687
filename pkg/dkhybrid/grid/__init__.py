from dkhybrid.grid.model import BoundaryType, GridSpec, ScalarField, FaceNoise
from dkhybrid.grid.topology import neighbor, cell_of_position, cell_indices, total_mass, wrap_positions, \
    shift_mask, dilate, halo, linear_index
