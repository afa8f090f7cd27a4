"""Word-level GF(2) elimination kernels.

Rows are packed little-endian into uint64 words: column ``c`` lives in word
``c >> 6`` at bit ``c & 63``.  Every kernel exists twice, a numba version and
a plain numpy version with identical semantics.  Set ``OGC_NO_NUMBA=1`` to
force the numpy path (useful for debugging and for the benchmark).
"""

from __future__ import annotations

import os

import numpy as np

WORD = 64


def _numba_requested() -> bool:
    return os.environ.get("OGC_NO_NUMBA", "").strip().lower() not in ("1", "true", "yes")


# --------------------------------------------------------------------------
# numpy implementations


def _np_rref_inplace(W: np.ndarray, npiv: int) -> np.ndarray:
    nrows = W.shape[0]
    pivots = []
    r = 0
    one = np.uint64(1)
    for col in range(npiv):
        if r == nrows:
            break
        w = col >> 6
        b = np.uint64(col & 63)
        hits = np.flatnonzero((W[r:, w] >> b) & one)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            W[[r, p]] = W[[p, r]]
        mask = ((W[:, w] >> b) & one).astype(bool)
        mask[r] = False
        if mask.any():
            W[mask, w:] ^= W[r, w:]
        pivots.append(col)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


def _np_reduce_inplace(V: np.ndarray, R: np.ndarray, pivots: np.ndarray) -> None:
    one = np.uint64(1)
    for i in range(pivots.shape[0]):
        col = int(pivots[i])
        w = col >> 6
        mask = ((V[:, w] >> np.uint64(col & 63)) & one).astype(bool)
        if mask.any():
            V[mask] ^= R[i]


def _np_matmul(A: np.ndarray, acols: int, B: np.ndarray) -> np.ndarray:
    if A.shape[0] == 0 or B.shape[1] == 0 or acols == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.uint64)
    a = unpack(A, acols).astype(np.float32)
    bcols = B.shape[1] * WORD
    b = unpack(B, bcols).astype(np.float32)
    prod = (a @ b).astype(np.int64) & 1
    return pack(prod.astype(np.uint8))


# --------------------------------------------------------------------------
# numba implementations

_nb_rref_inplace = None
_nb_reduce_inplace = None
_nb_matmul = None

if _numba_requested():
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        numba = None

    if numba is not None:

        @numba.njit(cache=True)
        def _nb_rref_inplace(W, npiv):  # noqa: F811
            nrows, nwords = W.shape
            pivots = np.empty(min(nrows, npiv), dtype=np.int64)
            r = 0
            for col in range(npiv):
                if r == nrows:
                    break
                w = col >> 6
                bit = np.uint64(1) << np.uint64(col & 63)
                p = -1
                for i in range(r, nrows):
                    if W[i, w] & bit:
                        p = i
                        break
                if p < 0:
                    continue
                if p != r:
                    for j in range(w, nwords):
                        t = W[r, j]
                        W[r, j] = W[p, j]
                        W[p, j] = t
                for i in range(nrows):
                    if i != r and (W[i, w] & bit):
                        for j in range(w, nwords):
                            W[i, j] ^= W[r, j]
                pivots[r] = col
                r += 1
            return pivots[:r].copy()

        @numba.njit(cache=True)
        def _nb_reduce_inplace(V, R, pivots):  # noqa: F811
            nrows, nwords = V.shape
            for i in range(pivots.shape[0]):
                col = pivots[i]
                w = col >> 6
                bit = np.uint64(1) << np.uint64(col & 63)
                for r in range(nrows):
                    if V[r, w] & bit:
                        for j in range(nwords):
                            V[r, j] ^= R[i, j]

        @numba.njit(cache=True)
        def _nb_matmul(A, acols, B):  # noqa: F811
            m = A.shape[0]
            nwords = B.shape[1]
            out = np.zeros((m, nwords), dtype=np.uint64)
            for i in range(m):
                for c in range(acols):
                    if (A[i, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                        for j in range(nwords):
                            out[i, j] ^= B[c, j]
            return out


USING_NUMBA = _nb_rref_inplace is not None


# --------------------------------------------------------------------------
# dispatch


def rref_inplace(W: np.ndarray, npiv: int) -> np.ndarray:
    """Fully reduce ``W`` over its first ``npiv`` columns; return pivot columns."""
    if W.shape[0] == 0 or npiv == 0:
        return np.zeros(0, dtype=np.int64)
    if USING_NUMBA:
        return _nb_rref_inplace(W, npiv)
    return _np_rref_inplace(W, npiv)


def reduce_inplace(V: np.ndarray, R: np.ndarray, pivots: np.ndarray) -> None:
    """Reduce each row of ``V`` against the fully reduced echelon rows ``R``."""
    if V.shape[0] == 0 or pivots.shape[0] == 0:
        return
    if USING_NUMBA:
        _nb_reduce_inplace(V, R, pivots)
    else:
        _np_reduce_inplace(V, R, pivots)


def matmul(A: np.ndarray, acols: int, B: np.ndarray) -> np.ndarray:
    if USING_NUMBA:
        if A.shape[0] == 0 or acols == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.uint64)
        return _nb_matmul(A, acols, B)
    return _np_matmul(A, acols, B)


def nwords(ncols: int) -> int:
    return (ncols + WORD - 1) // WORD


def pack(dense: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array of shape (rows, cols) into uint64 words."""
    dense = np.ascontiguousarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    nw = nwords(cols)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(rows, nw).copy()


def unpack(W: np.ndarray, ncols: int) -> np.ndarray:
    rows = W.shape[0]
    if rows == 0 or W.shape[1] == 0:
        return np.zeros((rows, ncols), dtype=np.uint8)
    bits = np.unpackbits(np.ascontiguousarray(W).view(np.uint8).reshape(rows, -1), axis=1, bitorder="little")
    return bits[:, :ncols]
