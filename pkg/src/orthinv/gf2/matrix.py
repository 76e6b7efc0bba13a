"""Dense bit-packed matrices over GF(2)."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import _kernels


def nwords(ncols: int) -> int:
    return max(1, (ncols + 63) >> 6)


def pack_columns(cols: Iterable[int], ncols: int) -> np.ndarray:
    """Bit vector with ones at the given column indices (repeats cancel)."""
    vec = np.zeros(nwords(ncols), dtype=np.uint64)
    for c in cols:
        if not 0 <= c < ncols:
            raise IndexError(f"column {c} out of range for {ncols} columns")
        vec[c >> 6] ^= np.uint64(1) << np.uint64(c & 63)
    return vec


def unpack_columns(vec: np.ndarray, ncols: int) -> list[int]:
    bits = np.unpackbits(vec.view(np.uint8), bitorder="little")[:ncols]
    return np.nonzero(bits)[0].tolist()


class GF2Matrix:
    """A GF(2) matrix kept as packed rows.

    ``rref()`` is computed lazily and cached; rank, kernel, and membership
    queries all go through it, so results do not depend on row order.
    """

    def __init__(self, rows: np.ndarray, ncols: int):
        rows = np.asarray(rows, dtype=np.uint64)
        if rows.ndim != 2 or rows.shape[1] != nwords(ncols):
            rows = rows.reshape(-1, nwords(ncols))
        self.rows = rows
        self.ncols = ncols
        self._rref = None

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], ncols: int) -> GF2Matrix:
        packed = [pack_columns(sup, ncols) for sup in supports]
        if not packed:
            return cls(np.zeros((0, nwords(ncols)), dtype=np.uint64), ncols)
        return cls(np.vstack(packed), ncols)

    @classmethod
    def empty(cls, ncols: int) -> GF2Matrix:
        return cls(np.zeros((0, nwords(ncols)), dtype=np.uint64), ncols)

    @property
    def nrows(self) -> int:
        return self.rows.shape[0]

    def rref(self):
        if self._rref is None:
            rows = self.rows
            if rows.shape[0]:
                rows = np.unique(rows, axis=0)
                rows = rows[rows.any(axis=1)]
            self._rref = _kernels.rref(np.ascontiguousarray(rows), self.ncols)
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def row_basis(self) -> GF2Matrix:
        R, _ = self.rref()
        return GF2Matrix(R, self.ncols)

    def kernel(self) -> list[np.ndarray]:
        """Basis of the right null space, one packed vector per free column."""
        R, pivots = self.rref()
        pivset = set(pivots.tolist())
        basis = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            vec = pack_columns([f], self.ncols)
            if len(pivots):
                column = (R[:, f >> 6] >> np.uint64(f & 63)) & np.uint64(1)
                for i in np.nonzero(column)[0]:
                    p = int(pivots[i])
                    vec[p >> 6] ^= np.uint64(1) << np.uint64(p & 63)
            basis.append(vec)
        return basis

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        R, pivots = self.rref()
        if not len(pivots):
            return np.array(vec, dtype=np.uint64, copy=True)
        return _kernels.reduce_vector(R, pivots, np.ascontiguousarray(vec, dtype=np.uint64))

    def contains(self, vec: np.ndarray) -> bool:
        return not self.reduce(vec).any()

    def stack(self, other: GF2Matrix) -> GF2Matrix:
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return GF2Matrix(np.vstack([self.rows, other.rows]), self.ncols)

    def contains_rowspace(self, other: GF2Matrix) -> bool:
        return all(self.contains(row) for row in other.rows)

    def same_rowspace(self, other: GF2Matrix) -> bool:
        return self.contains_rowspace(other) and other.contains_rowspace(self)

    def multiply_vector(self, vec: np.ndarray) -> np.ndarray:
        """``A @ v`` over GF(2) as a 0/1 int array (one entry per row)."""
        anded = self.rows & np.asarray(vec, dtype=np.uint64)
        bits = np.unpackbits(anded.view(np.uint8), axis=1)
        return bits.sum(axis=1) % 2
