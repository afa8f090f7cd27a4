"""Graded ``Ext^1_C(K, C)`` in degree 0.

Two steps of a minimal free resolution ``P2 -> P1 -> P0 -> K`` over the
finite-dimensional local algebra C are enough.  A degree-0 homomorphism
``C(-b) -> C`` is an element of ``C_b``, so

    Hom(P0, C)_0 = sum_j C_{a_j} --d0--> sum_r C_{b_r} --d1--> sum_s C_{e_s}

and the Ext rank is ``dim ker d1 - rank d0``.  Only degrees up to the top
degree of C can contribute, which bounds the resolution work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .f2_linear import Echelon, F2Mat, F2Vec, block_matrix, left_kernel, rank
from .graded import (
    CAlgebra,
    FreeModule,
    GradedModule,
    Presentation1,
    c_algebra,
    module_min_gens,
    orbit,
)
from .graded import DualModule
from .module_pres import anomalous_module, top_dimension


def build_c_algebra(k: int, n: int) -> CAlgebra:
    return c_algebra(k, n)


@dataclass
class FreeResStep:
    shifts: list[int]
    # images of the generators in the previous free module (or in K for P0)
    images: list[F2Vec]


@dataclass
class Resolution:
    C: CAlgebra
    K: GradedModule
    P0: FreeResStep
    P1: FreeResStep
    P2: FreeResStep
    max_degree: Optional[int]
    exact: bool


def resolve_K(k: int, n: int, max_degree: Optional[int] = None, route: str = "dual",
              algebra: Optional[CAlgebra] = None) -> Resolution:
    """Generators, relations and second syzygies of K, up to ``max_degree``.

    ``algebra`` substitutes a differently based copy of C (dual route only).
    """
    if algebra is not None:
        if route != "dual":
            raise ValueError("a custom algebra needs the dual route")
        C = algebra
        K = DualModule(C, top_dimension(k, n))
    else:
        C = c_algebra(k, n)
        K = anomalous_module(k, n, route)
    gens = module_min_gens(K, k)
    step0 = Presentation1(C, K, gens, max_degree)
    rels = step0.relations()
    step1 = Presentation1(C, step0.F, rels, max_degree)
    syz = step1.relations()
    exact = True
    for d, Z in step0.kernel.items():
        P = step1.phi.get(d)
        if (P.nrows and rank(P) if P is not None else 0) != Z.nrows:
            exact = False
    if max_degree is None and not step0.check_surjective():
        exact = False
    return Resolution(
        C, K,
        FreeResStep([a for a, _ in gens], [v for _, v in gens]),
        FreeResStep([b for b, _ in rels], [v for _, v in rels]),
        FreeResStep([e for e, _ in syz], [v for _, v in syz]),
        max_degree, exact,
    )


def _dual_map(C: CAlgebra, src: list[int], dst: list[int], images: list[F2Vec]) -> F2Mat:
    """Matrix of ``Hom(F_src, C)_0 -> Hom(F_dst, C)_0`` induced by ``F_dst -> F_src``.

    ``images[r]`` is the image of generator r of ``F_dst`` (degree dst[r])
    in ``F_src``.  Rows: basis of sum_j C_{src_j}; columns: sum_r C_{dst_r}.
    """
    F = FreeModule(C, src)
    rs = [C.dim(a) for a in src]
    cs = [C.dim(b) for b in dst]
    if sum(rs) == 0 or sum(cs) == 0:
        return F2Mat.zeros(sum(rs), sum(cs))
    blocks = [[None] * len(dst) for _ in src]
    for r, (b, img) in enumerate(zip(dst, images)):
        if cs[r] == 0:
            continue
        parts = F.split(b, img)
        for j, a in enumerate(src):
            if rs[j] == 0:
                continue
            coeff = parts[j]
            e = b - a
            if not coeff.any():
                continue
            # phi(g_j) = x in C_a contributes coeff * x to C_b
            orb = orbit(C, C, e, F2Mat.from_dense(coeff.reshape(1, -1)), a)
            blocks[j][r] = orb[a]
    return block_matrix(blocks, rs, cs)


@dataclass
class ExtReport:
    k: int
    n: int
    rank: int
    z1_dim: int
    d0_rank: int
    d0_target_dim: int
    d1_rank: int
    generator_degrees: list[int]
    relation_degrees: list[int]
    syzygy_degrees: list[int]
    cocycles: list[list[dict]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "ext1_rank": self.rank,
            "z1_dim": self.z1_dim,
            "d0_rank": self.d0_rank,
            "d0_target_dim": self.d0_target_dim,
            "d1_rank": self.d1_rank,
            "generator_degrees": self.generator_degrees,
            "relation_degrees": self.relation_degrees,
            "syzygy_degrees": self.syzygy_degrees,
            "cocycles": self.cocycles,
        }


def ext1_rank(k: int, n: int, route: str = "dual", normal_form: bool = True,
              algebra: Optional[CAlgebra] = None) -> ExtReport:
    C = algebra if algebra is not None else c_algebra(k, n)
    res = resolve_K(k, n, max_degree=C.top, route=route, algebra=algebra)
    a, b, e = res.P0.shifts, res.P1.shifts, res.P2.shifts
    d0 = _dual_map(C, a, b, res.P1.images)
    d1 = _dual_map(C, b, e, res.P2.images)
    if d0.nrows and d1.ncols and not (d0 @ d1).is_zero():
        raise ArithmeticError("d1 d0 != 0; resolution is inconsistent")
    Z1 = left_kernel(d1) if d1.ncols else F2Mat.identity(d1.nrows)
    r0 = rank(d0)
    report = ExtReport(
        k, n, Z1.nrows - r0, Z1.nrows, r0, d0.ncols, rank(d1),
        a, b, e,
    )
    if normal_form:
        report.cocycles = _normal_form(C, b, d0, Z1)
    return report


def _normal_form(C: CAlgebra, rel_degrees: list[int], d0: F2Mat, Z1: F2Mat) -> list[list[dict]]:
    """Cocycle representatives reduced modulo ``im d0``.

    Relations are listed by ascending degree, so elimination clears the
    low-degree coordinates first and the survivors sit on the highest
    relation degrees.
    """
    width = sum(C.dim(b) for b in rel_degrees)
    if width == 0:
        return []
    B = Echelon(width, d0)
    reduced = Echelon(width, B.reduce(Z1))
    offs = np.cumsum([0] + [C.dim(b) for b in rel_degrees])
    out = []
    for r in range(reduced.dim):
        bits = reduced.R.row(r).to_bits()
        entries = []
        for idx, bdeg in enumerate(rel_degrees):
            seg = bits[offs[idx]:offs[idx + 1]]
            if seg.any():
                entries.append({"relation": idx, "degree": bdeg, "value": C.element_text(bdeg, seg)})
        out.append(entries)
    return out


def ext_normal_form(k: int, n: int, route: str = "dual") -> ExtReport:
    return ext1_rank(k, n, route=route, normal_form=True)
