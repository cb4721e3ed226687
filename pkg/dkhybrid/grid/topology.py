__author__ = 'dkhybrid developers'

import math

import numpy as np
from scipy.ndimage import maximum_filter

from dkhybrid.grid.model import GridSpec, ScalarField

AXES = {'x': 0, 'y': 1, 'z': 2}


def _axis(axis):
    if isinstance(axis, str):
        return AXES[axis]
    return int(axis)


def neighbor(cell, axis, direction, grid: GridSpec):
    """Neighbouring cell index triple, or None across a Neumann wall.

    :param direction: -1/+1 or '-'/'+'
    """
    cell = tuple(int(c) for c in cell) + (0,) * (3 - len(cell))
    for c, n in zip(cell, grid.cells):
        if c < 0 or c >= n:
            raise IndexError("cell out of range: " + str(cell))
    a = _axis(axis)
    step = -1 if direction in ('-', -1) else 1
    out = list(cell)
    j = cell[a] + step
    if 0 <= j < grid.cells[a]:
        out[a] = j
    elif grid.is_periodic(a):
        out[a] = j % grid.cells[a]
    else:
        return None
    return tuple(out)


def wrap_positions(x, grid: GridSpec):
    """Map positions into the domain: modular wrap on periodic axes, mirror on Neumann axes."""
    x = np.array(x, dtype=np.float64, copy=True)
    for a in range(grid.dim):
        L = grid.extents[a]
        if grid.is_periodic(a):
            x[..., a] = np.mod(x[..., a], L)
            # mod can round up to L for tiny negatives
            x[..., a] = np.where(x[..., a] >= L, 0.0, x[..., a])
        else:
            y = np.mod(x[..., a], 2.0 * L)
            x[..., a] = np.where(y > L, 2.0 * L - y, y)
    return x


def cell_indices(x, grid: GridSpec):
    """Vectorised cell lookup, returns an (n, 3) integer array."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if np.isnan(x).any():
        raise ValueError("position is NaN")
    n = x.shape[0]
    out = np.zeros((n, 3), dtype=np.int64)
    for a in range(grid.dim):
        h = grid.spacing[a]
        i = np.floor(x[:, a] / h).astype(np.int64)
        out[:, a] = np.clip(i, 0, grid.cells[a] - 1)
    return out


def cell_of_position(x, grid: GridSpec):
    """Cell of a single position; cells are half-open [x_{i-1/2}, x_{i+1/2})."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if np.isnan(x).any():
        raise ValueError("position is NaN")
    pos = np.zeros(3)
    pos[:len(x)] = x
    pos = wrap_positions(pos.reshape(1, 3), grid)
    return tuple(int(v) for v in cell_indices(pos, grid)[0])


def linear_index(cells, grid: GridSpec):
    cells = np.asarray(cells, dtype=np.int64)
    return np.ravel_multi_index((cells[..., 0], cells[..., 1], cells[..., 2]), grid.shape)


def total_mass(f: ScalarField):
    """Number of particles represented by the field."""
    return float(math.fsum(f.values.ravel())) * f.grid.cell_volume


def shift_mask(mask, offset, grid: GridSpec):
    """out[c] = mask[c + offset]; wraps on periodic axes, False beyond Neumann walls."""
    out = np.asarray(mask)
    for a, o in enumerate(offset):
        if o == 0:
            continue
        if grid.is_periodic(a):
            out = np.roll(out, -o, axis=a)
        else:
            shifted = np.zeros_like(out)
            src = [slice(None)] * 3
            dst = [slice(None)] * 3
            if o > 0:
                src[a] = slice(o, None)
                dst[a] = slice(None, -o)
            else:
                src[a] = slice(None, o)
                dst[a] = slice(-o, None)
            shifted[tuple(dst)] = out[tuple(src)]
            out = shifted
    return out


def dilate(mask, grid: GridSpec, radius=1):
    """Infinity-norm dilation of a boolean mask by ``radius`` cells."""
    mask = np.asarray(mask, dtype=bool)
    if radius <= 0:
        return mask.copy()
    size = [2 * radius + 1 if a < grid.dim else 1 for a in range(3)]
    modes = ['wrap' if grid.is_periodic(a) else 'constant' for a in range(3)]
    return maximum_filter(mask.astype(np.uint8), size=size, mode=modes, cval=0).astype(bool)


def halo(mask, grid: GridSpec):
    """Cells outside ``mask`` within one cell (infinity norm) of it."""
    mask = np.asarray(mask, dtype=bool)
    return dilate(mask, grid, 1) & ~mask
