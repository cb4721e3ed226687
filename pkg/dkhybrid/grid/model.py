__author__ = 'dkhybrid developers'

from enum import Enum
from dataclasses import dataclass
from typing import Tuple

import numpy as np


class BoundaryType(Enum):
    PERIODIC = "Periodic"
    NEUMANN = "HomogeneousNeumann"

    @staticmethod
    def parse(value):
        if isinstance(value, BoundaryType):
            return value
        v = str(value).strip().lower()
        for bc in BoundaryType:
            if v in (bc.value.lower(), bc.name.lower()):
                return bc
        raise ValueError("Unknown boundary condition: " + str(value))


@dataclass(frozen=True)
class GridSpec:
    """Uniform rectilinear mesh of I x J x K cells on [0,Lx) x [0,Ly) x [0,Lz).

    Axes beyond ``dim`` always carry one cell of extent 1 so that every array
    in the package is three dimensional.
    """
    dim: int
    cells: Tuple[int, int, int]
    extents: Tuple[float, float, float] = (1.0, 1.0, 1.0)
    bc: Tuple[BoundaryType, BoundaryType, BoundaryType] = (BoundaryType.PERIODIC,) * 3

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError("dim must be 1, 2 or 3, got " + str(self.dim))
        cells = tuple(int(c) for c in self.cells) + (1,) * (3 - len(self.cells))
        extents = tuple(float(e) for e in self.extents) + (1.0,) * (3 - len(self.extents))
        bc = self.bc
        if isinstance(bc, (str, BoundaryType)):
            bc = (bc,) * 3
        bc = tuple(BoundaryType.parse(b) for b in bc) + (BoundaryType.PERIODIC,) * (3 - len(bc))
        for a in range(self.dim, 3):
            if cells[a] != 1 or extents[a] != 1.0:
                raise ValueError("unused axis %d must have one cell and unit extent" % a)
        if any(c <= 0 for c in cells):
            raise ValueError("cell counts must be positive: " + str(cells))
        if any(not np.isfinite(e) or e <= 0 for e in extents):
            raise ValueError("extents must be positive: " + str(extents))
        object.__setattr__(self, 'cells', cells)
        object.__setattr__(self, 'extents', extents)
        object.__setattr__(self, 'bc', bc)

    @property
    def shape(self):
        return self.cells

    @property
    def spacing(self):
        return tuple(L / n for L, n in zip(self.extents, self.cells))

    @property
    def cell_volume(self):
        dx, dy, dz = self.spacing
        return dx * dy * dz

    @property
    def num_cells(self):
        return self.cells[0] * self.cells[1] * self.cells[2]

    def face_area(self, axis):
        dx = self.spacing
        return self.cell_volume / dx[axis]

    def is_periodic(self, axis):
        return self.bc[axis] == BoundaryType.PERIODIC

    def centers(self, axis):
        h = self.spacing[axis]
        return (np.arange(self.cells[axis]) + 0.5) * h

    def to_json(self):
        return {
            'dim': self.dim,
            'cells': list(self.cells),
            'extents': list(self.extents),
            'bc': [b.value for b in self.bc]
        }

    @staticmethod
    def load_from_json(data):
        return GridSpec(dim=int(data['dim']),
                        cells=tuple(data['cells']),
                        extents=tuple(data.get('extents', (1.0, 1.0, 1.0))),
                        bc=tuple(data.get('bc', ('Periodic',) * 3)))


class ScalarField(object):
    """Cell-centred number density (particles per unit volume) on a grid."""

    def __init__(self, grid: GridSpec, values=None):
        self.grid = grid
        if values is None:
            values = np.zeros(grid.shape, dtype=np.float64)
        values = np.asarray(values, dtype=np.float64)
        if values.shape != grid.shape:
            values = values.reshape(grid.shape)
        if not np.all(np.isfinite(values)):
            raise ValueError("field values must be finite")
        self.values = values

    @staticmethod
    def constant(grid: GridSpec, q):
        return ScalarField(grid, np.full(grid.shape, float(q)))

    def copy(self):
        return ScalarField(self.grid, self.values.copy())

    def with_values(self, values):
        return ScalarField(self.grid, values)

    @property
    def negative_count(self):
        return int(np.count_nonzero(self.values < 0.0))

    @property
    def min_value(self):
        return float(self.values.min())

    def particles_per_cell(self):
        return self.values * self.grid.cell_volume

    def __repr__(self):
        return 'ScalarField(shape=%s, mass=%.6g)' % (self.grid.shape, self.values.sum() * self.grid.cell_volume)


class FaceNoise(object):
    """Standard normal draws, one per axis-aligned face.

    ``draws[axis][i, j, k]`` belongs to the face on the high side of cell
    (i, j, k) along ``axis``. Draws are keyed by (step, axis, face index), so
    a face shared by two patches always sees the same number.
    """

    def __init__(self, grid: GridSpec, draws, step=0):
        self.grid = grid
        self.step = step
        self.draws = [np.asarray(d, dtype=np.float64) for d in draws]
        if len(self.draws) != 3 or any(d.shape != grid.shape for d in self.draws):
            raise ValueError("face noise shape does not match grid " + str(grid.shape))

    @staticmethod
    def zeros(grid: GridSpec):
        return FaceNoise(grid, [np.zeros(grid.shape) for _ in range(3)])

    @staticmethod
    def draw(grid: GridSpec, rng, step):
        from dkhybrid.rng import TAG_FACE
        idx = np.arange(grid.num_cells, dtype=np.uint64)
        draws = []
        for axis in range(3):
            if axis < grid.dim:
                z = rng.normals(TAG_FACE, idx, axis, step, 1)[:, 0].reshape(grid.shape)
            else:
                z = np.zeros(grid.shape)
            draws.append(z)
        return FaceNoise(grid, draws, step)
