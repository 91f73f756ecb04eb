import numpy as np
from PyQt5 import QtCore

from src.Utils.Exceptions import InvalidParameterError, OutOfGridError

translate = QtCore.QCoreApplication.translate

directions = ((+1, 0), (+1, -1), (0, -1), (-1, 0), (-1, +1), (0, +1))


def hex_distance(a, b):
    dq = a[0] - b[0]
    dr = a[1] - b[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def rotate(cell):
    """60 degree rotation about the origin."""
    q, r = cell
    return (-r, q + r)


class HexGrid:
    """
    Hexagon-shaped patch of an axial lattice. Cells are indexed in (q, r)
    order; fields over the grid are numpy arrays whose last axis runs over
    that index.
    """
    __slots__ = ("radius", "cells", "index", "table", "padded_table")

    def __init__(self, radius):
        if radius < 0 or int(radius) != radius:
            raise InvalidParameterError(translate("HexLattice", "Grid radius must be a non-negative integer, got {radius}.").format(radius=radius))
        self.radius = int(radius)
        self.cells = sorted((q, r) for q in range(-self.radius, self.radius + 1)
                                   for r in range(-self.radius, self.radius + 1)
                                   if hex_distance((q, r), (0, 0)) <= self.radius)
        self.index = {cell: i for i, cell in enumerate(self.cells)}

        self.table = np.full((len(self.cells), 6), -1, dtype=np.int64)
        for i, (q, r) in enumerate(self.cells):
            for k, (dq, dr) in enumerate(directions):
                self.table[i, k] = self.index.get((q + dq, r + dr), -1)
        # Missing neighbours point back at the cell itself, contributing zero difference
        self.padded_table = np.where(self.table >= 0, self.table, np.arange(len(self.cells))[:, None])

    def __len__(self):
        return len(self.cells)

    def __contains__(self, cell):
        return tuple(cell) in self.index

    def index_of(self, cell):
        try:
            return self.index[tuple(cell)]
        except KeyError as e:
            raise OutOfGridError(cell, self.radius) from e

    def neighbors(self, cell):
        i = self.index_of(cell)
        return [self.cells[j] for j in self.table[i] if j >= 0]

    def neighbor_indices(self, i):
        return [int(j) for j in self.table[i] if j >= 0]

    def disk(self, center, k):
        self.index_of(center)
        return [cell for cell in self.cells if hex_distance(cell, center) <= k]

    def zeros(self, *leading):
        return np.zeros((*leading, len(self.cells)))

    def rotation_permutation(self):
        return np.array([self.index[rotate(cell)] for cell in self.cells], dtype=np.int64)


def neighbors(cell, grid):
    return grid.neighbors(cell)


def diffuse(field, delta, grid):
    """
    One explicit step c' = c + delta/6 * sum(c_y - c). Boundary cells keep
    the divisor 6, so the total is conserved. Accepts stacked fields.
    """
    if not 0 < delta <= 1:
        raise InvalidParameterError(translate("HexLattice", "Diffusion rate must lie in (0, 1], got {delta}.").format(delta=delta))
    field = np.asarray(field, dtype=float)
    return field + (delta / 6.) * (field[..., grid.padded_table].sum(axis=-1) - 6. * field)
