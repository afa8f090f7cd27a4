"""Koszul complex of ``(q_{n-k+1}, ..., q_n)`` over ``W2``.

``Lambda^i`` has one free generator per i-subset S of {1..k} (colex order),
shifted by the sum of the degrees of the q's in S.  In internal degree D its
basis is the concatenation over S of the W2 monomials of degree D - shift(S).

Matrices follow the row convention of ``f2_linear``: ``differential(i, D)``
has one row per basis element of ``Lambda^i_D`` and one column per basis
element of ``Lambda^{i-1}_D``, so ``d_1 d_2 = 0`` reads ``D2 @ D1 == 0``.

H_1 in Koszul degree D is the anomalous module in cohomological degree D - 1.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Optional

import numpy as np

from .char_classes import context
from .f2_linear import Echelon, F2Mat, F2Vec, block_matrix, left_kernel, rank
from .graded import GradedModule
from .poly_ring import W2, Poly2, mono_basis, mul_matrix


class KoszulComplex:
    def __init__(self, k: int, n: int):
        if not 2 <= k < n:
            raise ValueError(f"need 2 <= k < n, got k={k}, n={n}")
        self.k = k
        self.n = n
        self.N = k * (n - k)
        ctx = context(k)
        self.vars = W2(k)
        self.q_degrees = list(range(n - k + 1, n + 1))
        self.q_list = [ctx.q(j) for j in self.q_degrees]
        self.subsets = {
            i: sorted(combinations(range(k), i), key=lambda S: tuple(reversed(S)))
            for i in range(k + 1)
        }
        self.shifts = {i: [sum(self.q_degrees[s] for s in S) for S in self.subsets[i]] for i in self.subsets}
        self._diff_cache: dict = {}

    # bases ------------------------------------------------------------

    def block_sizes(self, i: int, D: int) -> list[int]:
        return [len(mono_basis(self.vars, D - s)) if D >= s else 0 for s in self.shifts.get(i, [])]

    def dim(self, i: int, D: int) -> int:
        return sum(self.block_sizes(i, D))

    def offsets(self, i: int, D: int) -> list[int]:
        return list(np.cumsum([0] + self.block_sizes(i, D)))

    # maps -------------------------------------------------------------

    def differential(self, i: int, D: int) -> F2Mat:
        """``d_i : Lambda^i_D -> Lambda^{i-1}_D``."""
        if i < 1 or i > self.k:
            raise ValueError("differential index must be in 1..k")
        key = (i, D)
        if key in self._diff_cache:
            return self._diff_cache[key]
        src_sets = self.subsets[i]
        dst_sets = self.subsets[i - 1]
        rs = self.block_sizes(i, D)
        cs = self.block_sizes(i - 1, D)
        if sum(rs) == 0 or sum(cs) == 0:
            M = F2Mat.zeros(sum(rs), sum(cs))
        else:
            dst_index = {S: c for c, S in enumerate(dst_sets)}
            blocks = [[None] * len(dst_sets) for _ in src_sets]
            for r, S in enumerate(src_sets):
                if rs[r] == 0:
                    continue
                src = mono_basis(self.vars, D - self.shifts[i][r])
                for s in S:
                    T = tuple(x for x in S if x != s)
                    c = dst_index[T]
                    if cs[c] == 0 or self.q_list[s].is_zero():
                        continue
                    dst = mono_basis(self.vars, D - self.shifts[i - 1][c])
                    blocks[r][c] = mul_matrix(self.q_list[s], src, dst)
            M = block_matrix(blocks, rs, cs)
        self._diff_cache[key] = M
        return M

    def multiply(self, i: int, f: Poly2, D: int, rows: F2Mat) -> F2Mat:
        """Multiply vectors of ``Lambda^i_D`` by the homogeneous ``f``."""
        e = f.degree
        if e is None:
            return F2Mat.zeros(rows.nrows, self.dim(i, D))
        rs = self.block_sizes(i, D)
        cs = self.block_sizes(i, D + e)
        g = len(rs)
        blocks = [[None] * g for _ in range(g)]
        for s in range(g):
            if rs[s] and cs[s]:
                sh = self.shifts[i][s]
                blocks[s][s] = mul_matrix(f, mono_basis(self.vars, D - sh), mono_basis(self.vars, D + e - sh))
        if sum(rs) == 0 or sum(cs) == 0:
            return F2Mat.zeros(rows.nrows, sum(cs))
        return rows @ block_matrix(blocks, rs, cs)

    # homology ---------------------------------------------------------

    def boundary_rank(self, i: int, D: int) -> int:
        if i < 1 or i > self.k:
            return 0
        return rank(self.differential(i, D))

    def homology_dim(self, i: int, D: int) -> int:
        return self.dim(i, D) - self.boundary_rank(i, D) - self.boundary_rank(i + 1, D)

    def cycles(self, D: int) -> F2Mat:
        return left_kernel(self.differential(1, D))

    def h1_slice(self, D: int) -> "H1Slice":
        B = self.differential(2, D) if self.k >= 2 else F2Mat.zeros(0, self.dim(1, D))
        RB = Echelon(self.dim(1, D), B)
        Z = self.cycles(D)
        RZ = Echelon(self.dim(1, D), RB.reduce(Z))
        return H1Slice(D, RB, RZ)

    def vector(self, coeffs, D: int) -> F2Vec:
        """Pack a coefficient tuple (one Poly2 per q slot) into ``Lambda^1_D``."""
        offs = self.offsets(1, D)
        bits = np.zeros(offs[-1], dtype=np.uint8)
        for s, f in enumerate(coeffs):
            if f.is_zero():
                continue
            sl = mono_basis(self.vars, D - self.shifts[1][s])
            for m in f.terms:
                bits[offs[s] + sl.index[m]] ^= 1
        return F2Vec.from_bits(bits)

    def unpack(self, v: F2Vec, D: int) -> list[Poly2]:
        """Inverse of ``vector``: coefficient polynomials of a ``Lambda^1_D`` vector."""
        offs = self.offsets(1, D)
        bits = v.to_bits()
        out = []
        for s in range(self.k):
            sl = mono_basis(self.vars, D - self.shifts[1][s])
            seg = bits[offs[s]:offs[s + 1]]
            out.append(Poly2(self.vars, [sl.basis[c] for c in np.flatnonzero(seg)]))
        return out


class H1Slice:
    """Chosen representatives of ``H_1`` in one Koszul degree.

    ``RB`` is the echelon form of the boundaries; representatives are the
    echelon rows of cycles reduced modulo ``RB``.  The class of a cycle is
    read off the representative pivots after reducing it modulo ``RB``.
    """

    def __init__(self, D: int, RB: Echelon, RZ: Echelon):
        self.degree = D
        self.RB = RB
        self.RZ = RZ

    @property
    def dim(self) -> int:
        return self.RZ.dim

    @property
    def representatives(self) -> F2Mat:
        return self.RZ.R

    def coords(self, cycles: F2Mat) -> F2Mat:
        return self.RZ.coords(self.RB.reduce(cycles))


@lru_cache(maxsize=32)
def build(k: int, n: int) -> KoszulComplex:
    return KoszulComplex(k, n)


class H1Module(GradedModule):
    """``K`` realized as Koszul ``H_1`` with cohomological degrees (Koszul - 1)."""

    def __init__(self, K: KoszulComplex):
        self.K = K
        self.k = K.k
        self.slices: dict[int, H1Slice] = {}
        lo_koszul = min(K.shifts[1])
        for D in range(lo_koszul, K.N + 2):
            self.slices[D] = K.h1_slice(D)
        nonzero = [D for D, s in self.slices.items() if s.dim]
        self.lo = (min(nonzero) - 1) if nonzero else 0
        self.hi = (max(nonzero) - 1) if nonzero else -1
        self._act: dict = {}

    def dim(self, d: int) -> int:
        s = self.slices.get(d + 1)
        return s.dim if s is not None else 0

    def act(self, l: int, d: int) -> F2Mat:
        key = (l, d)
        if key not in self._act:
            src, dst = self.dim(d), self.dim(d + l)
            if src == 0 or dst == 0:
                self._act[key] = F2Mat.zeros(src, dst)
            else:
                D = d + 1
                w = Poly2.var(self.K.vars, l)
                moved = self.K.multiply(1, w, D, self.slices[D].representatives)
                self._act[key] = self.slices[D + l].coords(moved)
        return self._act[key]


class Lambda1Module(GradedModule):
    """``Lambda^1`` as a free W2-module, internal (Koszul) grading."""

    def __init__(self, K: KoszulComplex, hi: int):
        self.K = K
        self.lo = min(K.shifts[1])
        self.hi = hi
        self._act: dict = {}

    def dim(self, d: int) -> int:
        return self.K.dim(1, d)

    def act(self, l: int, d: int) -> F2Mat:
        key = (l, d)
        if key not in self._act:
            w = Poly2.var(self.K.vars, l)
            self._act[key] = self.K.multiply(1, w, d, F2Mat.identity(self.dim(d)))
        return self._act[key]
