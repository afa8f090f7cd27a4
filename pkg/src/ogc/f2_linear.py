"""Dense, bit-packed linear algebra over GF(2).

Matrices are stored row-major with each row packed into uint64 words.  The
module follows the *row-vector* convention throughout: a matrix with ``m``
rows and ``p`` columns is the linear map ``F2^m -> F2^p`` sending the i-th
unit vector to row ``i``.  Consequently ``solve(M, b)`` looks for ``x`` with
``x @ M == b`` (row-space membership), and composition of maps ``A`` then
``B`` is ``A @ B``.

``kernel_basis`` keeps the conventional column meaning (``M x^T = 0``); use
``left_kernel`` for the kernel of the map a matrix represents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels as K

__all__ = [
    "F2Vec",
    "F2Mat",
    "Echelon",
    "rref",
    "rank",
    "kernel_basis",
    "left_kernel",
    "solve",
    "block_matrix",
]


@dataclass(frozen=True, eq=False)
class F2Vec:
    bits: np.ndarray
    len: int

    @classmethod
    def zeros(cls, n: int) -> "F2Vec":
        return cls(np.zeros(K.nwords(n), dtype=np.uint64), n)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "F2Vec":
        arr = np.asarray(list(bits), dtype=np.uint8)
        return cls(K.pack(arr.reshape(1, -1))[0], arr.shape[0])

    @classmethod
    def from_support(cls, support: Iterable[int], n: int) -> "F2Vec":
        arr = np.zeros(n, dtype=np.uint8)
        for c in support:
            arr[c] ^= 1
        return cls.from_bits(arr)

    def to_bits(self) -> np.ndarray:
        return K.unpack(self.bits.reshape(1, -1), self.len)[0]

    def support(self) -> list[int]:
        return [int(c) for c in np.flatnonzero(self.to_bits())]

    def __getitem__(self, c: int) -> int:
        return int((int(self.bits[c >> 6]) >> (c & 63)) & 1)

    def __add__(self, other: "F2Vec") -> "F2Vec":
        if self.len != other.len:
            raise ValueError("length mismatch")
        return F2Vec(self.bits ^ other.bits, self.len)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, F2Vec) and self.len == other.len and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.len, self.bits.tobytes()))

    def is_zero(self) -> bool:
        return not self.bits.any()

    def as_matrix(self) -> "F2Mat":
        return F2Mat(self.bits.reshape(1, -1).copy(), self.len)

    def __repr__(self) -> str:
        return "F2Vec(" + "".join(str(b) for b in self.to_bits()) + ")"


@dataclass(frozen=True, eq=False)
class F2Mat:
    words: np.ndarray
    ncols: int

    # construction -----------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Mat":
        return cls(np.zeros((nrows, K.nwords(ncols)), dtype=np.uint64), ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Mat":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> "F2Mat":
        arr = np.asarray(dense, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(K.pack(arr), arr.shape[1])

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable[int]], ncols: int) -> "F2Mat":
        """Build from one support set (column indices) per row."""
        dense = np.zeros((len(rows), ncols), dtype=np.uint8)
        for i, cols in enumerate(rows):
            for c in cols:
                dense[i, c] ^= 1
        return cls.from_dense(dense)

    @classmethod
    def from_strings(cls, *rows: str) -> "F2Mat":
        return cls.from_dense([[int(ch) for ch in r] for r in rows])

    @classmethod
    def from_vectors(cls, vecs: Sequence[F2Vec], ncols: int) -> "F2Mat":
        if not vecs:
            return cls.zeros(0, ncols)
        return cls(np.stack([v.bits for v in vecs]).copy(), ncols)

    # inspection -------------------------------------------------------

    @property
    def nrows(self) -> int:
        return self.words.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def to_dense(self) -> np.ndarray:
        return K.unpack(self.words, self.ncols)

    def row(self, i: int) -> F2Vec:
        return F2Vec(self.words[i].copy(), self.ncols)

    def rows(self) -> list[F2Vec]:
        return [self.row(i) for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return not self.words.any()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, F2Mat)
            and self.shape == other.shape
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.words.tobytes()))

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 400:
            body = ",".join("".join(str(b) for b in r) for r in self.to_dense())
            return f"F2Mat({self.nrows}x{self.ncols}: {body})"
        return f"F2Mat({self.nrows}x{self.ncols})"

    # algebra ----------------------------------------------------------

    def __add__(self, other: "F2Mat") -> "F2Mat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return F2Mat(self.words ^ other.words, self.ncols)

    def __matmul__(self, other: "F2Mat") -> "F2Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        return F2Mat(K.matmul(self.words, self.ncols, other.words), other.ncols)

    def apply(self, v: F2Vec) -> F2Vec:
        """Image of the row vector ``v`` under this map (``v @ self``)."""
        return (v.as_matrix() @ self).row(0)

    @property
    def T(self) -> "F2Mat":
        return F2Mat.from_dense(self.to_dense().T)

    def take_rows(self, idx) -> "F2Mat":
        idx = np.asarray(idx, dtype=np.int64)
        return F2Mat(self.words[idx].copy() if idx.size else np.zeros((0, self.words.shape[1]), np.uint64), self.ncols)

    def take_cols(self, idx) -> "F2Mat":
        idx = np.asarray(idx, dtype=np.int64)
        return F2Mat.from_dense(self.to_dense()[:, idx])

    def copy_words(self) -> np.ndarray:
        return np.array(self.words, dtype=np.uint64, copy=True, order="C")

    @staticmethod
    def vstack(mats: Sequence["F2Mat"], ncols: Optional[int] = None) -> "F2Mat":
        if not mats:
            if ncols is None:
                raise ValueError("ncols required for an empty stack")
            return F2Mat.zeros(0, ncols)
        width = mats[0].ncols
        if any(m.ncols != width for m in mats):
            raise ValueError("column mismatch in vstack")
        return F2Mat(np.concatenate([m.words for m in mats], axis=0), width)

    @staticmethod
    def hstack(mats: Sequence["F2Mat"], nrows: Optional[int] = None) -> "F2Mat":
        if not mats:
            return F2Mat.zeros(nrows or 0, 0)
        return block_matrix([list(mats)])


def _place(dst: np.ndarray, src: np.ndarray, offset: int) -> None:
    """XOR the packed rows ``src`` into ``dst`` starting at bit column ``offset``."""
    if src.shape[1] == 0 or src.shape[0] == 0:
        return
    q, s = divmod(offset, K.WORD)
    sw = src.shape[1]
    if s == 0:
        dst[:, q:q + sw] ^= src
        return
    shift = np.uint64(s)
    back = np.uint64(K.WORD - s)
    lo = src << shift
    hi = src >> back
    dst[:, q:q + sw] ^= lo
    end = min(q + 1 + sw, dst.shape[1])
    dst[:, q + 1:end] ^= hi[:, : end - q - 1]


def block_matrix(blocks: Sequence[Sequence[Optional[F2Mat]]],
                 row_sizes: Optional[Sequence[int]] = None,
                 col_sizes: Optional[Sequence[int]] = None) -> F2Mat:
    """Assemble a block matrix; ``None`` entries are zero blocks."""
    nbr = len(blocks)
    nbc = len(blocks[0]) if nbr else 0
    if row_sizes is None:
        row_sizes = [next(b.nrows for b in blocks[i] if b is not None) for i in range(nbr)]
    if col_sizes is None:
        col_sizes = [next(blocks[i][j].ncols for i in range(nbr) if blocks[i][j] is not None)
                     for j in range(nbc)]
    total_rows = int(sum(row_sizes))
    total_cols = int(sum(col_sizes))
    out = np.zeros((total_rows, K.nwords(total_cols)), dtype=np.uint64)
    r0 = 0
    for i in range(nbr):
        c0 = 0
        for j in range(nbc):
            b = blocks[i][j]
            if b is not None:
                if b.shape != (row_sizes[i], col_sizes[j]):
                    raise ValueError(f"block ({i},{j}) has shape {b.shape}, expected {(row_sizes[i], col_sizes[j])}")
                _place(out[r0:r0 + row_sizes[i]], b.words, c0)
            c0 += col_sizes[j]
        r0 += row_sizes[i]
    return F2Mat(out, total_cols)


# --------------------------------------------------------------------------
# elimination


def rref(M: F2Mat) -> tuple[F2Mat, tuple[int, ...]]:
    """Reduced row echelon form; zero rows are dropped from ``R``.

    Pivot choice: lowest column first, first qualifying row.  Deterministic.
    """
    W = M.copy_words()
    piv = K.rref_inplace(W, M.ncols)
    return F2Mat(W[: piv.shape[0]].copy(), M.ncols), tuple(int(p) for p in piv)


def rank(M: F2Mat) -> int:
    if M.nrows == 0 or M.ncols == 0:
        return 0
    W = M.copy_words()
    return int(K.rref_inplace(W, M.ncols).shape[0])


def kernel_basis(M: F2Mat) -> F2Mat:
    """Rows spanning ``{x : M x^T = 0}``; one row per free column."""
    n = M.ncols
    R, piv = rref(M)
    free = np.setdiff1d(np.arange(n), np.asarray(piv, dtype=np.int64))
    if free.size == 0:
        return F2Mat.zeros(0, n)
    basis = np.zeros((free.size, n), dtype=np.uint8)
    basis[np.arange(free.size), free] = 1
    if piv:
        Rd = R.to_dense()
        basis[:, np.asarray(piv)] = Rd[:, free].T
    return F2Mat.from_dense(basis)


def left_kernel(M: F2Mat) -> F2Mat:
    """Rows spanning ``{x : x @ M = 0}``, the kernel of the map ``M``."""
    if M.ncols == 0:
        return F2Mat.identity(M.nrows)
    return kernel_basis(M.T)


def solve(M: F2Mat, b: F2Vec) -> Optional[F2Vec]:
    """Return ``x`` with ``x @ M == b``, or ``None`` when ``b`` is not in the row space."""
    if b.len != M.ncols:
        raise ValueError("b must have one entry per column of M")
    m = M.nrows
    if m == 0:
        return F2Vec.zeros(0) if b.is_zero() else None
    aug = block_matrix([[M, F2Mat.identity(m)]])
    W = aug.copy_words()
    piv = K.rref_inplace(W, M.ncols)
    R = W[: piv.shape[0]]
    target = block_matrix([[b.as_matrix(), F2Mat.zeros(1, m)]]).copy_words()
    K.reduce_inplace(target, R, piv)
    head = F2Mat(target, M.ncols + m).to_dense()[0]
    if head[: M.ncols].any():
        return None
    return F2Vec.from_bits(head[M.ncols:])


class Echelon:
    """A subspace held as fully reduced echelon rows.

    Because every pivot column carries a single 1, a vector ``v`` of the
    subspace equals the sum of the rows whose pivot bit is set in ``v``.
    """

    def __init__(self, ncols: int, rows: Optional[F2Mat] = None):
        self.ncols = ncols
        if rows is None or rows.nrows == 0:
            self.R = F2Mat.zeros(0, ncols)
            self.pivots = np.zeros(0, dtype=np.int64)
        else:
            W = rows.copy_words()
            piv = K.rref_inplace(W, ncols)
            self.R = F2Mat(W[: piv.shape[0]].copy(), ncols)
            self.pivots = piv

    @property
    def dim(self) -> int:
        return int(self.pivots.shape[0])

    def reduce(self, M: F2Mat) -> F2Mat:
        W = M.copy_words()
        K.reduce_inplace(W, self.R.words, self.pivots)
        return F2Mat(W, M.ncols)

    def contains(self, v: F2Vec) -> bool:
        return self.reduce(v.as_matrix()).is_zero()

    def coords(self, M: F2Mat) -> F2Mat:
        """Coordinates (pivot bits) of rows of ``M`` assumed to lie in the span."""
        if self.dim == 0:
            return F2Mat.zeros(M.nrows, 0)
        return M.take_cols(self.pivots)

    def extended(self, M: F2Mat) -> "Echelon":
        return Echelon(self.ncols, F2Mat.vstack([self.R, M]))

    def free_columns(self) -> np.ndarray:
        return np.setdiff1d(np.arange(self.ncols), self.pivots)
