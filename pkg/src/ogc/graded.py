"""Finite graded algebras and modules over GF(2).

``CAlgebra`` materializes ``C = W2 / (q_{n-k+1}, ..., q_n)`` degree by
degree.  Every monomial of positive degree is ``w_l`` times a monomial of
lower degree, so

    C_d = (sum over l of w_l C_{d-l}) / (commutation + generator relations)

and a basis of ``C_d`` falls out of one elimination per degree.  Each basis
element remembers a parent ``(l, b')`` with ``b = w_l * b'``; orbit maps
(multiplying a fixed element by every basis element of C) follow these
pointers instead of doing polynomial arithmetic.

Modules are anything with ``dim(d)`` and ``act(l, d)`` (the matrix of
``w_l`` from degree ``d`` to ``d + l``, rows = source basis).  Since C is a
local ring of Krull dimension 0, minimal generators of a module M are a
complement of ``m M`` (Nakayama), computed degreewise.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .char_classes import context
from .f2_linear import Echelon, F2Mat, F2Vec, block_matrix, left_kernel, rank
from .poly_ring import W2, GradedSlice, Poly2, _mono_text, mono_basis, mono_key


class GradedModule:
    """Interface: finite-dimensional graded module over C."""

    lo: int
    hi: int

    def dim(self, d: int) -> int:
        raise NotImplementedError

    def act(self, l: int, d: int) -> F2Mat:
        raise NotImplementedError

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def hilbert(self) -> dict[int, int]:
        return {d: self.dim(d) for d in self.degrees() if self.dim(d)}


class CAlgebra(GradedModule):
    def __init__(self, k: int, n: int, relations: Optional[Sequence[Poly2]] = None,
                 reverse_order: bool = False):
        """``reverse_order`` flips the column order, so a different set of
        monomials is kept as the basis (used to test basis independence)."""
        if not 2 <= k < n:
            raise ValueError(f"need 2 <= k < n, got k={k}, n={n}")
        self.k = k
        self.n = n
        ctx = context(k)
        if relations is None:
            relations = [ctx.q(j) for j in range(n - k + 1, n + 1)]
        self.relations = list(relations)
        self.reverse_order = reverse_order
        self._rel_by_deg: dict[int, list[Poly2]] = {}
        for f in self.relations:
            if not f.is_zero():
                self._rel_by_deg.setdefault(f.degree, []).append(f)
        self.dims: list[int] = []
        self.reps: list[list[tuple]] = []
        self.parent: list[list[tuple[int, int]]] = []
        self._mu: dict[tuple[int, int], F2Mat] = {}
        self._nf_cache: dict[tuple, np.ndarray] = {}
        self._build()
        self.lo = 0
        self.hi = self.top

    # construction -----------------------------------------------------

    def _build(self) -> None:
        k = self.k
        one = (0,) * k
        self.dims.append(1)
        self.reps.append([one])
        self.parent.append([(0, 0)])
        self._nf_cache[one] = np.ones(1, dtype=np.uint8)
        zeros_run = 0
        d = 0
        max_rel = max(self._rel_by_deg, default=0)
        while True:
            d += 1
            self._build_degree(d)
            zeros_run = zeros_run + 1 if self.dims[d] == 0 else 0
            if zeros_run >= k - 1 and d >= max_rel:
                break
        self.dims = self.dims[: d - zeros_run + 1]
        self.reps = self.reps[: len(self.dims)]
        self.parent = self.parent[: len(self.dims)]
        self.top = len(self.dims) - 1

    def _build_degree(self, d: int) -> None:
        k = self.k
        slots = [l for l in range(2, k + 1) if d - l >= 0 and self.dims[d - l] > 0]
        cols = []  # (monomial, slot, index)
        for l in slots:
            for b, m in enumerate(self.reps[d - l]):
                e = list(m)
                e[l - 1] += 1
                cols.append((tuple(e), l, b))
        cols.sort(key=lambda c: (mono_key(c[0]), c[1]), reverse=self.reverse_order)
        ncols = len(cols)
        if ncols == 0:
            self.dims.append(0)
            self.reps.append([])
            self.parent.append([])
            return
        colidx = {(l, b): i for i, (_, l, b) in enumerate(cols)}
        # slot l's columns, in basis order of C_{d-l}
        slot_cols = {l: np.array([colidx[(l, b)] for b in range(self.dims[d - l])]) for l in slots}

        rows = []
        for a in range(2, k + 1):
            for b in range(a + 1, k + 1):
                e = d - a - b
                if e < 0 or self.dims[e] == 0 or (a not in slot_cols and b not in slot_cols):
                    continue
                # w_a (w_b c) + w_b (w_a c) for c in C_e; a slot whose
                # source degree vanished contributes nothing
                dense = np.zeros((self.dims[e], ncols), dtype=np.uint8)
                if a in slot_cols:
                    dense[:, slot_cols[a]] ^= self.mu(b, e).to_dense()
                if b in slot_cols:
                    dense[:, slot_cols[b]] ^= self.mu(a, e).to_dense()
                rows.append(dense)
        for f in self._rel_by_deg.get(d, []):
            dense = np.zeros((1, ncols), dtype=np.uint8)
            for m in f.terms:
                # split m = w_l * m' with the smallest l present
                l = next(i + 1 for i, x in enumerate(m) if x > 0)
                e = list(m)
                e[l - 1] -= 1
                if l in slot_cols:
                    dense[0, slot_cols[l]] ^= self.nf_mono(tuple(e))
            rows.append(dense)
        rel = F2Mat.from_dense(np.vstack(rows)) if rows else F2Mat.zeros(0, ncols)
        ech = Echelon(ncols, rel)
        free = ech.free_columns()
        dim = int(free.size)
        self.dims.append(dim)
        self.reps.append([cols[c][0] for c in free])
        self.parent.append([(cols[c][1], cols[c][2]) for c in free])
        # projection V -> C_d: free columns map to units, pivot columns to
        # the free part of their echelon row
        proj = np.zeros((ncols, dim), dtype=np.uint8)
        proj[free, np.arange(dim)] = 1
        if ech.dim:
            proj[ech.pivots] = ech.R.to_dense()[:, free]
        for l in slots:
            self._mu[(l, d - l)] = F2Mat.from_dense(proj[slot_cols[l]])

    # access -----------------------------------------------------------

    def dim(self, d: int) -> int:
        return self.dims[d] if 0 <= d < len(self.dims) else 0

    def mu(self, l: int, d: int) -> F2Mat:
        """Multiplication by ``w_l`` from ``C_d`` to ``C_{d+l}``."""
        key = (l, d)
        if key in self._mu:
            return self._mu[key]
        src, dst = self.dim(d), self.dim(d + l)
        if src and dst and 2 <= l <= self.k:
            raise KeyError(key)
        return F2Mat.zeros(src, dst)

    act = mu

    def total_dim(self) -> int:
        return sum(self.dims)

    def nf_mono(self, m: tuple) -> np.ndarray:
        """Coordinates of a monomial of W2 in the basis of C."""
        hit = self._nf_cache.get(m)
        if hit is not None:
            return hit
        d = sum((i + 1) * e for i, e in enumerate(m))
        if self.dim(d) == 0:
            out = np.zeros(self.dim(d), dtype=np.uint8)
        else:
            l = next(i + 1 for i, x in enumerate(m) if x > 0)
            e = list(m)
            e[l - 1] -= 1
            prev = self.nf_mono(tuple(e))
            if prev.any():
                out = (F2Mat.from_dense(prev.reshape(1, -1)) @ self.mu(l, d - l)).to_dense()[0]
            else:
                out = np.zeros(self.dim(d), dtype=np.uint8)
        self._nf_cache[m] = out
        return out

    def nf(self, f: Poly2) -> np.ndarray:
        d = f.degree
        if d is None:
            if f.is_zero():
                raise ValueError("degree of zero is ambiguous; use nf_in")
            raise ValueError("nf needs a homogeneous polynomial")
        return self.nf_in(f, d)

    def nf_in(self, f: Poly2, d: int) -> np.ndarray:
        out = np.zeros(self.dim(d), dtype=np.uint8)
        for m in f.terms:
            out ^= self.nf_mono(m)
        return out

    def element(self, d: int, coords) -> Poly2:
        """The W2 representative (sum of basis monomials) of an element of C_d."""
        coords = np.asarray(coords)
        return Poly2(W2(self.k), [self.reps[d][i] for i in np.flatnonzero(coords)])

    def element_text(self, d: int, coords) -> str:
        return str(self.element(d, coords))

    def socle(self, d: int) -> F2Mat:
        """Basis of ``{c in C_d : w_l c = 0 for all l}``."""
        dim = self.dim(d)
        if dim == 0:
            return F2Mat.zeros(0, 0)
        maps = [self.mu(l, d) for l in range(2, self.k + 1) if self.dim(d + l)]
        if not maps:
            return F2Mat.identity(dim)
        return left_kernel(F2Mat.hstack(maps))

    def socle_degrees(self) -> list[int]:
        out = []
        for d in range(self.top + 1):
            out += [d] * self.socle(d).nrows
        return out


@lru_cache(maxsize=64)
def c_algebra(k: int, n: int) -> CAlgebra:
    return CAlgebra(k, n)


class DualModule(GradedModule):
    """``Hom(C, F2)`` placed so that degree ``i`` is dual to ``C_{N-i}``."""

    def __init__(self, C: CAlgebra, N: int):
        self.C = C
        self.N = N
        self.lo = N - C.top
        self.hi = N
        self._cache: dict = {}

    def dim(self, d: int) -> int:
        return self.C.dim(self.N - d)

    def act(self, l: int, d: int) -> F2Mat:
        key = (l, d)
        if key not in self._cache:
            # (w_l phi)(y) = phi(w_l y): transpose of w_l on C_{N-d-l}
            self._cache[key] = self.C.mu(l, self.N - d - l).T
        return self._cache[key]


class FreeModule(GradedModule):
    """``sum_j C(-a_j)``; degree-d basis is the concatenation over j of C_{d-a_j}."""

    def __init__(self, C: CAlgebra, degrees: Sequence[int]):
        self.C = C
        self.gens = list(degrees)
        self.lo = min(self.gens) if self.gens else 0
        self.hi = max(self.gens) + C.top if self.gens else -1
        self._cache: dict = {}

    def block_sizes(self, d: int) -> list[int]:
        return [self.C.dim(d - a) for a in self.gens]

    def offsets(self, d: int) -> list[int]:
        return list(np.cumsum([0] + self.block_sizes(d)))

    def dim(self, d: int) -> int:
        return sum(self.block_sizes(d))

    def act(self, l: int, d: int) -> F2Mat:
        key = (l, d)
        if key not in self._cache:
            rs = self.block_sizes(d)
            cs = self.block_sizes(d + l)
            if not self.gens or sum(rs) == 0 or sum(cs) == 0:
                self._cache[key] = F2Mat.zeros(sum(rs), sum(cs))
            else:
                g = len(self.gens)
                blocks = [[None] * g for _ in range(g)]
                for j, a in enumerate(self.gens):
                    if rs[j] and cs[j]:
                        blocks[j][j] = self.C.mu(l, d - a)
                self._cache[key] = block_matrix(blocks, rs, cs)
        return self._cache[key]

    def split(self, d: int, v: F2Vec) -> list[np.ndarray]:
        """Cut a vector of degree d into its per-generator C-coordinates."""
        bits = v.to_bits()
        offs = self.offsets(d)
        return [bits[offs[j]:offs[j + 1]] for j in range(len(self.gens))]


# --------------------------------------------------------------------------
# module algorithms


def orbit(C: CAlgebra, M: GradedModule, a: int, g: F2Mat, max_e: Optional[int] = None) -> dict[int, F2Mat]:
    """Images ``b * g`` for every basis element ``b`` of C_e; ``g`` is 1 x dim M_a."""
    out = {0: g}
    last = C.top if max_e is None else min(C.top, max_e)
    for e in range(1, last + 1):
        dim = C.dim(e)
        width = M.dim(a + e)
        if dim == 0 or width == 0:
            out[e] = F2Mat.zeros(dim, width)
            continue
        rows = np.zeros((dim, F2Mat.zeros(0, width).words.shape[1]), dtype=np.uint64)
        par = C.parent[e]
        by_l: dict[int, list[int]] = {}
        for b, (l, _) in enumerate(par):
            by_l.setdefault(l, []).append(b)
        for l, bs in by_l.items():
            src = out[e - l]
            picked = src.take_rows([par[b][1] for b in bs])
            rows[bs] = (picked @ M.act(l, a + e - l)).words
        out[e] = F2Mat(rows, width)
    return out


def hom_from_free(F: FreeModule, M: GradedModule, images: Sequence[F2Vec],
                  max_degree: Optional[int] = None) -> dict[int, F2Mat]:
    """Degreewise matrices of the C-linear map ``F -> M`` sending generator j to ``images[j]``."""
    C = F.C
    hi = F.hi if max_degree is None else min(F.hi, max_degree)
    orbits = [orbit(C, M, a, img.as_matrix(), hi - a) for a, img in zip(F.gens, images)]
    out = {}
    for d in range(F.lo, hi + 1):
        width = M.dim(d)
        parts = []
        for j, a in enumerate(F.gens):
            e = d - a
            if 0 <= e <= C.top and C.dim(e):
                parts.append(orbits[j][e] if e in orbits[j] else F2Mat.zeros(C.dim(e), width))
        out[d] = F2Mat.vstack(parts, width) if parts else F2Mat.zeros(0, width)
    return out


def decomposables(M: GradedModule, sub: dict[int, F2Mat], d: int, k: int) -> F2Mat:
    """Rows spanning ``(m * sub)_d = sum_l w_l sub_{d-l}``."""
    width = M.dim(d)
    parts = []
    for l in range(2, k + 1):
        S = sub.get(d - l)
        if S is not None and S.nrows and width:
            parts.append(S @ M.act(l, d - l))
    return F2Mat.vstack(parts, width) if parts else F2Mat.zeros(0, width)


def submodule_min_gens(M: GradedModule, sub: dict[int, F2Mat], k: int,
                       degrees: Optional[Sequence[int]] = None) -> list[tuple[int, F2Vec]]:
    """Minimal generators of the submodule with degreewise spans ``sub``.

    ``sub[d]`` must have independent rows.  New generators in degree d are
    a deterministic complement of the decomposable part inside ``sub[d]``:
    reduce modulo the decomposables and take the echelon rows of the rest.
    """
    gens = []
    for d in (degrees if degrees is not None else sorted(sub)):
        S = sub.get(d)
        if S is None or S.nrows == 0:
            continue
        dec = Echelon(M.dim(d), decomposables(M, sub, d, k))
        if dec.dim == S.nrows:  # rows of sub[d] are independent
            continue
        residue = Echelon(M.dim(d), dec.reduce(S))
        for r in range(residue.dim):
            gens.append((d, residue.R.row(r)))
    return gens


def module_min_gens(M: GradedModule, k: int) -> list[tuple[int, F2Vec]]:
    full = {d: F2Mat.identity(M.dim(d)) for d in M.degrees() if M.dim(d)}
    return submodule_min_gens(M, full, k)


class Presentation1:
    """One step of a minimal free resolution: generators and relation module."""

    def __init__(self, C: CAlgebra, M: GradedModule, gens: list[tuple[int, F2Vec]],
                 max_degree: Optional[int] = None):
        self.C = C
        self.M = M
        self.gens = gens
        self.F = FreeModule(C, [a for a, _ in gens])
        self.max_degree = max_degree
        self.phi = hom_from_free(self.F, M, [v for _, v in gens], max_degree)
        self.kernel = {d: left_kernel(P) for d, P in self.phi.items()}

    def check_surjective(self) -> bool:
        for d, P in self.phi.items():
            if rank(P) != self.M.dim(d):
                return False
        return True

    def relations(self) -> list[tuple[int, F2Vec]]:
        return submodule_min_gens(self.F, self.kernel, self.C.k)
