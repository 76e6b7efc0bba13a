"""Bit-packed GF(2) elimination kernels.

Rows are ``uint64`` arrays of shape ``(nrows, nwords)``; column ``c`` lives in
word ``c >> 6``, bit ``c & 63``.  Each kernel has a numba version and a pure
numpy version with identical results.  Set ``ORTHINV_PURE_NUMPY=1`` to force
the numpy path (it is also used when numba cannot be imported).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA and os.environ.get("ORTHINV_PURE_NUMPY", "") not in ("1", "true", "yes")


def rref_numpy(rows: np.ndarray, ncols: int):
    """Reduced row echelon form; returns ``(R, pivots)`` trimmed to the rank."""
    R = np.array(rows, dtype=np.uint64, copy=True)
    nrows = R.shape[0]
    pivots = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        bit = np.uint64(1) << np.uint64(col & 63)
        hits = np.nonzero(R[rank:, w] & bit)[0]
        if hits.size == 0:
            continue
        piv = rank + hits[0]
        if piv != rank:
            R[[rank, piv]] = R[[piv, rank]]
        mask = (R[:, w] & bit) != 0
        mask[rank] = False
        R[mask] ^= R[rank]
        pivots.append(col)
        rank += 1
    return R[:rank].copy(), np.array(pivots, dtype=np.int64)


def reduce_numpy(R: np.ndarray, pivots: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Residual of ``vec`` after clearing every pivot column of ``R``."""
    out = np.array(vec, dtype=np.uint64, copy=True)
    for i, col in enumerate(pivots):
        if out[col >> 6] >> np.uint64(col & 63) & np.uint64(1):
            out ^= R[i]
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def rref_numba(rows, ncols):
        R = rows.copy()
        nrows, nwords = R.shape
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        rank = 0
        one = np.uint64(1)
        for col in range(ncols):
            if rank == nrows:
                break
            w = col >> 6
            bit = one << np.uint64(col & 63)
            piv = -1
            for i in range(rank, nrows):
                if R[i, w] & bit:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(nwords):
                    tmp = R[rank, k]
                    R[rank, k] = R[piv, k]
                    R[piv, k] = tmp
            for i in range(nrows):
                if i != rank and R[i, w] & bit:
                    for k in range(nwords):
                        R[i, k] ^= R[rank, k]
            pivots[rank] = col
            rank += 1
        return R[:rank].copy(), pivots[:rank].copy()

    @njit(cache=True)
    def reduce_numba(R, pivots, vec):
        out = vec.copy()
        one = np.uint64(1)
        for i in range(pivots.shape[0]):
            col = pivots[i]
            if (out[col >> 6] >> np.uint64(col & 63)) & one:
                for k in range(out.shape[0]):
                    out[k] ^= R[i, k]
        return out

else:  # pragma: no cover
    rref_numba = rref_numpy
    reduce_numba = reduce_numpy


if USING_NUMBA:
    rref, reduce_vector = rref_numba, reduce_numba
else:
    rref, reduce_vector = rref_numpy, reduce_numpy
