"""Minimal presentations of C, ker(d_1) and K, plus the structural checks.

K is computed by default as the graded dual of C: the cup-product pairing
``K_i x C_{N-i} -> F2`` is perfect and C-bilinear, so ``K_i = (C_{N-i})^*``
with ``w_l`` acting by the transpose of multiplication on C.  The Koszul
route (H_1 of the Koszul complex) gives the same module and is available
as ``route="koszul"``; the test suite checks that both agree.

Degrees of K are cohomological throughout.  ``Presentation.regrade`` is the
single place where the Koszul shift (+1) is applied for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .char_classes import context
from .f2_linear import Echelon, F2Mat, F2Vec, left_kernel, rank
from .graded import (
    CAlgebra,
    DualModule,
    FreeModule,
    GradedModule,
    Presentation1,
    c_algebra,
    module_min_gens,
    orbit,
    submodule_min_gens,
)
from .koszul import H1Module, KoszulComplex, Lambda1Module, build
from .poly_ring import W2, Poly2, hilbert_w2, mono_basis, slice_matrix


class CapTooLow(RuntimeError):
    """Generators of ker(d_1) still appear near the cap; rerun with a larger cap."""


def top_dimension(k: int, n: int) -> int:
    return k * (n - k)


# --------------------------------------------------------------------------
# presentations


@dataclass
class Relation:
    degree: int
    coeffs: list[str]  # one entry per generator, text form of an element of C (or W2)


@dataclass
class Presentation:
    ring: str  # "W2" or "C"
    generator_degrees: list[int]
    relations: list[Relation]
    grading: str = "cohomological"

    @property
    def relation_degrees(self) -> list[int]:
        return [r.degree for r in self.relations]

    def regrade(self, grading: str) -> "Presentation":
        """Switch between cohomological and Koszul degrees (Koszul = cohomological + 1)."""
        if grading == self.grading:
            return self
        if {grading, self.grading} != {"cohomological", "koszul"}:
            raise ValueError(f"unknown grading {grading!r}")
        shift = 1 if grading == "koszul" else -1
        return Presentation(
            self.ring,
            [a + shift for a in self.generator_degrees],
            [Relation(r.degree + shift, list(r.coeffs)) for r in self.relations],
            grading,
        )


@dataclass
class CData:
    k: int
    n: int
    ideal_min_gens: list[Poly2]
    ideal_min_gen_indices: list[int]
    hilbert: dict[int, int]
    top_degree: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "module": "C",
            "hilbert": {str(d): v for d, v in sorted(self.hilbert.items())},
            "generators": [{"degree": 0}],
            "relations": [
                {"degree": j, "coeffs": [str(f)]}
                for j, f in zip(self.ideal_min_gen_indices, self.ideal_min_gens)
            ],
        }


@dataclass
class KData:
    k: int
    n: int
    presentation: Presentation
    hilbert: dict[int, int]
    route: str = "dual"

    @property
    def generator_degrees(self) -> list[int]:
        return self.presentation.generator_degrees

    @property
    def relation_degrees(self) -> list[int]:
        return self.presentation.relation_degrees

    def to_json(self, grading: str = "cohomological") -> dict:
        P = self.presentation.regrade(grading)
        shift = 0 if grading == "cohomological" else 1
        return {
            "k": self.k,
            "n": self.n,
            "module": "K",
            "grading": grading,
            "hilbert": {str(d + shift): v for d, v in sorted(self.hilbert.items())},
            "generators": [{"degree": a} for a in P.generator_degrees],
            "relations": [{"degree": r.degree, "coeffs": r.coeffs} for r in P.relations],
        }


# --------------------------------------------------------------------------
# C


def ideal_slice(polys: Sequence[Poly2], k: int, d: int) -> F2Mat:
    """Rows spanning the degree-d part of the W2-ideal generated by ``polys``."""
    vars = W2(k)
    target = mono_basis(vars, d)
    rows = []
    for f in polys:
        e = f.degree
        if e is None or e > d:
            continue
        for m in mono_basis(vars, d - e).basis:
            rows.append(f * Poly2.mono(vars, m))
    return slice_matrix(rows, target)


def in_ideal(f: Poly2, polys: Sequence[Poly2], k: int) -> bool:
    if f.is_zero():
        return True
    d = f.degree
    if d is None:
        raise ValueError("membership test needs a homogeneous polynomial")
    ech = Echelon(len(mono_basis(W2(k), d)), ideal_slice(polys, k, d))
    return ech.contains(slice_matrix([f], mono_basis(W2(k), d)).row(0))


def hilbert_direct(k: int, n: int, d: int) -> int:
    """``dim C_d`` as ``hilbert_w2 - rank(ideal slice)``; an independent oracle."""
    ctx = context(k)
    gens = [ctx.q(j) for j in range(n - k + 1, n + 1)]
    return hilbert_w2(k, d) - rank(ideal_slice(gens, k, d))


def present_C(k: int, n: int) -> CData:
    if not 2 <= k < n:
        raise ValueError(f"need 2 <= k < n, got k={k}, n={n}")
    ctx = context(k)
    idx = list(range(n - k + 1, n + 1))
    gens = [ctx.q(j) for j in idx]
    keep, keep_idx = [], []
    for j, f in zip(idx, gens):
        others = [g for i, g in zip(idx, gens) if i != j]
        if f.is_zero() or in_ideal(f, others, k):
            continue
        keep.append(f)
        keep_idx.append(j)
    C = c_algebra(k, n)
    return CData(k, n, keep, keep_idx, C.hilbert(), C.top)


def nilpotency_witness(k: int, n: int, v: int) -> int:
    """Least e >= 1 with ``w_v^e`` in the ideal of the q's."""
    if not 2 <= v <= k:
        raise ValueError("variable index must lie in 2..k")
    C = c_algebra(k, n)
    cap = top_dimension(k, n) + k
    e = 1
    while e * v <= cap:
        m = [0] * k
        m[v - 1] = e
        if not C.nf_mono(tuple(m)).any():
            return e
        e += 1
    raise CapTooLow(f"w_{v} not nilpotent below degree {cap}")


# --------------------------------------------------------------------------
# ker(d_1)


def min_gens_ker_d1(K: KoszulComplex, cap: Optional[int] = None) -> list[tuple[int, F2Vec]]:
    """Minimal W2-generators of ker(d_1) in Koszul degrees up to ``cap``.

    Default cap is N + k + 1.  A generator inside the last k degrees below
    the cap means the cap may be cutting off further generators, which is
    reported as ``CapTooLow``.
    """
    k = K.k
    if cap is None:
        cap = K.N + k + 1
    lam = Lambda1Module(K, cap)
    sub = {D: K.cycles(D) for D in range(lam.lo, cap + 1)}
    gens = submodule_min_gens(lam, sub, k, degrees=range(lam.lo, cap + 1))
    late = [D for D, _ in gens if D > cap - k]
    if late:
        raise CapTooLow(f"ker(d_1) generators in degrees {late} near cap {cap}; raise the cap")
    return gens


def ker_d1_degrees(k: int, n: int, cap: Optional[int] = None) -> list[int]:
    return [D for D, _ in min_gens_ker_d1(build(k, n), cap)]


# --------------------------------------------------------------------------
# K


def anomalous_module(k: int, n: int, route: str = "dual") -> GradedModule:
    if route == "dual":
        return DualModule(c_algebra(k, n), top_dimension(k, n))
    if route == "koszul":
        return H1Module(build(k, n))
    raise ValueError(f"unknown route {route!r}")


def _relation_texts(C: CAlgebra, F: FreeModule, b: int, v: F2Vec) -> list[str]:
    return [C.element_text(b - a, seg) if seg.size else "0" for a, seg in zip(F.gens, F.split(b, v))]


def present_K(k: int, n: int, route: str = "dual", with_relations: bool = True) -> KData:
    if not 2 <= k < n:
        raise ValueError(f"need 2 <= k < n, got k={k}, n={n}")
    C = c_algebra(k, n)
    M = anomalous_module(k, n, route)
    if not with_relations and route == "dual":
        # generators of the dual of C sit opposite the socle of C
        N = top_dimension(k, n)
        degs = sorted(N - d for d in C.socle_degrees())
        return KData(k, n, Presentation("C", degs, []), M.hilbert(), route)
    gens = module_min_gens(M, k)
    rels = []
    if with_relations:
        step = Presentation1(C, M, gens)
        rels = [Relation(b, _relation_texts(C, step.F, b, v)) for b, v in step.relations()]
    return KData(k, n, Presentation("C", [a for a, _ in gens], rels), M.hilbert(), route)


def charrank(k: int, n: int) -> int:
    gens = present_K(k, n, with_relations=False).generator_degrees
    return min(gens) - 1 if gens else top_dimension(k, n)


def conjecture_t(n: int) -> int:
    """The t with 2^{t-1} < n <= 2^t."""
    return max(1, (n - 1).bit_length())


def conjecture_value(k: int, n: int, t: Optional[int] = None) -> int:
    if t is None:
        t = conjecture_t(n)
    half = 2 ** (t - 1)
    if not (5 <= k <= half < n <= 2 ** t):
        raise ValueError(f"formula needs 5 <= k <= 2^(t-1) < n <= 2^t; got k={k}, n={n}, t={t}")
    return min(2 ** t - 2, k * (n - half) + half - 2)


def check_poincare(k: int, n: int, route: str = "dual") -> bool:
    C = c_algebra(k, n)
    N = top_dimension(k, n)
    M = anomalous_module(k, n, route)
    hK = M.hilbert()
    hC = C.hilbert()
    return all(hK.get(N - d, 0) == v for d, v in hC.items()) and sum(hK.values()) == sum(hC.values())


def check_free_cyclic(k: int, n: int, route: str = "dual") -> bool:
    K = present_K(k, n, route)
    return len(K.generator_degrees) != 1 or not K.relation_degrees


# --------------------------------------------------------------------------
# presented modules


def parse_relation_rows(k: int, rows: Sequence[Sequence[str | Poly2]]) -> list[list[Poly2]]:
    vars = W2(k)
    return [[f if isinstance(f, Poly2) else Poly2.parse(vars, f) for f in row] for row in rows]


def relation_vectors(C: CAlgebra, gen_degrees: Sequence[int], rows: Sequence[Sequence[Poly2]]) -> list[tuple[int, F2Vec]]:
    """Turn W2-coefficient rows into homogeneous vectors of the free C-module."""
    F = FreeModule(C, gen_degrees)
    out = []
    for row in rows:
        degs = {f.degree + a for f, a in zip(row, gen_degrees) if not f.is_zero()}
        if len(degs) != 1:
            raise ValueError("relation row is not homogeneous")
        b = degs.pop()
        parts = [C.nf_in(f, b - a) if b - a >= 0 else np.zeros(0, np.uint8) for f, a in zip(row, gen_degrees)]
        out.append((b, F2Vec.from_bits(np.concatenate(parts) if parts else [])))
    return out


def presented_hilbert(C: CAlgebra, gen_degrees: Sequence[int], rows: Sequence[Sequence[Poly2]]) -> dict[int, int]:
    """Hilbert function of ``sum_j C(-a_j) / (relations)``, by linear algebra over C."""
    F = FreeModule(C, gen_degrees)
    rels = relation_vectors(C, gen_degrees, rows)
    span: dict[int, list[F2Mat]] = {}
    for b, v in rels:
        orb = orbit(C, F, b, v.as_matrix())
        for e, M in orb.items():
            if M.nrows and M.ncols:
                span.setdefault(b + e, []).append(M)
    out = {}
    for d in F.degrees():
        dim = F.dim(d)
        r = rank(F2Mat.vstack(span[d])) if d in span else 0
        if dim - r:
            out[d] = dim - r
    return out
