"""Explicit relations among the q's and the k=3 closed-form machinery.

A relation vector stores one W2 coefficient per q in the window
``q_{n-k+1}, ..., q_n`` (slot order, lowest index first).  The recursions
below are easier to state with ``alpha_j`` = coefficient of ``q_{n-j}``;
``_slots``/``_alphas`` are the only conversion between the two orders.

* descend: substitute ``q_n = sum_l w_l q_{n-l}``; level n -> n-1, degree kept.
* ascend: multiply by ``w_k`` and absorb ``w_k q_{n-k+1}`` through the
  recursion for ``q_{n+1}``; level n -> n+1, degree + k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .char_classes import context, is_power_of_two
from .f2_linear import Echelon, F2Mat
from .koszul import KoszulComplex
from .module_pres import Presentation, Relation
from .poly_ring import W1, W2, Poly2, mono_basis, mul_matrix, slice_matrix


# --------------------------------------------------------------------------
# relation vectors


@dataclass(frozen=True)
class RelationVec:
    k: int
    n: int
    coeffs: tuple  # Poly2 over W2, coefficient of q_{n-k+1+s} in slot s
    koszul_degree: int
    note: str = ""

    @property
    def q_indices(self) -> list[int]:
        return list(range(self.n - self.k + 1, self.n + 1))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def verify(self) -> bool:
        """Homogeneous of the stated degree and ``sum coeffs_s q_{n-k+1+s} = 0``."""
        ctx = context(self.k)
        acc = Poly2.zero(ctx.w2)
        for c, j in zip(self.coeffs, self.q_indices):
            if c.is_zero():
                continue
            if c.degree != self.koszul_degree - j:
                return False
            acc = acc + c * ctx.q(j)
        return acc.is_zero()

    def alphas(self) -> list[Poly2]:
        return _alphas(self.coeffs)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coeffs) + f") @ n={self.n}, deg {self.koszul_degree}"


def _alphas(slots: Sequence[Poly2]) -> list[Poly2]:
    return list(reversed(slots))


def _slots(alphas: Sequence[Poly2]) -> tuple:
    return tuple(reversed(alphas))


def make_relation(k: int, n: int, coeffs: Sequence[Poly2 | str | int], degree: Optional[int] = None,
                  note: str = "") -> RelationVec:
    """Build and verify a relation from slot-ordered coefficients."""
    vars = W2(k)
    cs = []
    for c in coeffs:
        if isinstance(c, Poly2):
            cs.append(c.set_w1_zero() if c.vars.includes_w1 else c)
        elif isinstance(c, int):
            cs.append(Poly2.one(vars) if c % 2 else Poly2.zero(vars))
        else:
            cs.append(Poly2.parse(vars, c))
    if len(cs) != k:
        raise ValueError(f"need {k} coefficients, got {len(cs)}")
    if degree is None:
        degs = {c.degree + (n - k + 1 + s) for s, c in enumerate(cs) if not c.is_zero()}
        if len(degs) > 1:
            raise ValueError("coefficients are not homogeneous")
        degree = degs.pop() if degs else 0
    rel = RelationVec(k, n, tuple(cs), degree, note)
    if not rel.verify():
        raise ValueError(f"not a relation among q_{n - k + 1}..q_{n}: {rel}")
    return rel


def from_highest_first(k: int, n: int, coeffs: Sequence[Poly2], degree: Optional[int] = None) -> RelationVec:
    """Coefficients listed as (coeff of q_n, coeff of q_{n-1}, ...)."""
    return make_relation(k, n, _slots(coeffs), degree)


# --------------------------------------------------------------------------
# recursions


@dataclass
class SyzygyCoeffs:
    k: int
    kind: str  # "descend" or "ascend"
    table: list[list[Poly2]] = field(default_factory=list)  # table[i][j]: alpha_j^i or beta_j^i


def _descend_once(k: int, a: list[Poly2]) -> list[Poly2]:
    w = lambda i: Poly2.var(W2(k), i)
    a0 = a[0]
    return [w(j + 1) * a0 + (a[j + 1] if j + 1 < k else Poly2.zero(W2(k))) for j in range(k)]


def _ascend_once(k: int, b: list[Poly2]) -> list[Poly2]:
    w = lambda i: Poly2.var(W2(k), i)
    top = b[k - 1]
    return [w(j) * top + (w(k) * b[j - 1] if j >= 1 else Poly2.zero(W2(k))) for j in range(k)]


def _run(kind: str, start: RelationVec, steps: int) -> SyzygyCoeffs:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if not start.verify():
        raise ValueError(f"start vector is not a relation: {start}")
    step = _descend_once if kind == "descend" else _ascend_once
    table = [start.alphas()]
    for _ in range(steps):
        table.append(step(start.k, table[-1]))
    return SyzygyCoeffs(start.k, kind, table)


def descend_table(start: RelationVec, steps: int) -> SyzygyCoeffs:
    return _run("descend", start, steps)


def ascend_table(start: RelationVec, steps: int) -> SyzygyCoeffs:
    return _run("ascend", start, steps)


def descend(k: int, start: RelationVec, steps: int) -> RelationVec:
    if start.k != k:
        raise ValueError("k does not match the start vector")
    tab = descend_table(start, steps)
    return make_relation(k, start.n - steps, _slots(tab.table[-1]), start.koszul_degree)


def ascend(k: int, start: RelationVec, steps: int) -> RelationVec:
    if start.k != k:
        raise ValueError("k does not match the start vector")
    tab = ascend_table(start, steps)
    return make_relation(k, start.n + steps, _slots(tab.table[-1]), start.koszul_degree + k * steps)


def unit_relation(k: int, n: int, slot: int) -> RelationVec:
    """``1 * q_{n-k+1+slot} = 0``; valid exactly when that q vanishes."""
    coeffs = [0] * k
    coeffs[slot] = 1
    return make_relation(k, n, coeffs)


def descend_start(k: int, t: int) -> RelationVec:
    """``q_{2^t-3} = 0`` as the top slot at level ``2^t - 3``."""
    return unit_relation(k, 2 ** t - 3, k - 1)


def ascend_start(k: int, t: int) -> RelationVec:
    """``q_{2^t-3} = 0`` as the bottom slot at level ``2^t - 3 + k - 1``."""
    return unit_relation(k, 2 ** t - 3 + k - 1, 0)


# closed forms used as oracles for the recursions


def k3_descended_closed(t: int, i: int) -> RelationVec:
    ctx = context(3)
    w3 = Poly2.var(ctx.w2, 3)
    return make_relation(3, 2 ** t - 3 - i, [w3 * ctx.q(i - 1), ctx.q(i + 1), ctx.q(i)], 2 ** t - 3)


def k3_ascended_closed(t: int, j: int) -> RelationVec:
    ctx = context(3)
    w3 = Poly2.var(ctx.w2, 3)
    n = 2 ** t - 1 + j
    return make_relation(3, n, [ctx.r(j), w3 * ctx.r(j - 2), ctx.r(j - 1)])


def k4_descended_closed(t: int, i: int) -> RelationVec:
    ctx = context(4)
    q = ctx.q
    w2, w3 = Poly2.var(ctx.w2, 2), Poly2.var(ctx.w2, 3)
    coeffs = [q(i + 3) + w2 * q(i + 1) + w3 * q(i), q(i + 2) + w2 * q(i), q(i + 1), q(i)]
    return make_relation(4, 2 ** t - 3 - i, coeffs, 2 ** t - 3)


def k4_beta3(i: int) -> Poly2:
    """``beta_3^{i+1} = w_3 beta_3^i + w_2 w_4 beta_3^{i-1} + w_4^3 beta_3^{i-3}``, ``beta_3^0 = 1``."""
    vars = W2(4)
    w2, w3, w4 = (Poly2.var(vars, l) for l in (2, 3, 4))
    seq = [Poly2.one(vars)]
    get = lambda m: seq[m] if m >= 0 else Poly2.zero(vars)
    while len(seq) <= i:
        m = len(seq) - 1
        seq.append(w3 * get(m) + w2 * w4 * get(m - 1) + w4 ** 3 * get(m - 3))
    return get(i)


def k4_ascended_closed(t: int, i: int) -> RelationVec:
    vars = W2(4)
    w2, w4 = Poly2.var(vars, 2), Poly2.var(vars, 4)
    b = k4_beta3
    coeffs = [b(i), w2 * b(i - 1) + w4 ** 2 * b(i - 3), w4 * b(i - 2), b(i - 1)]
    return make_relation(4, 2 ** t + i, coeffs)


def fundamental_vec(k: int, n: int) -> RelationVec:
    """The two-power relation restricted to the window ``q_{n-k+1..n}``.

    For even k the odd part ``sum_{3 <= i < k, i odd} w_i q_{n-i}`` fits the
    window; for odd k the odd part would need ``q_{n-k}``, so the even part
    ``sum_{0 <= i < k, i even} w_i q_{n-i}`` (which equals it) is used.  For
    k = 2 neither fits and the vanishing ``q_{n-1} = 0`` is returned, flagged.
    """
    if not is_power_of_two(n) or n <= k:
        raise ValueError(f"need n a power of two with n > k, got k={k}, n={n}")
    vars = W2(k)
    if k == 2:
        return make_relation(2, n, [1, 0], note="degenerate: k=2 has no odd classes")
    alphas = [Poly2.zero(vars)] * k
    odd = k % 2 == 0
    for i in range(3 if odd else 0, k, 2):
        alphas[i] = Poly2.var(vars, i)
    note = "odd part" if odd else "even part"
    return make_relation(k, n, _slots(alphas), n, note=note)


# --------------------------------------------------------------------------
# k = 3 closed forms


@dataclass(frozen=True)
class CaseIndices:
    n: int
    t: int
    i: int
    j: int


def case_indices(n: int, t: Optional[int] = None) -> CaseIndices:
    """``t`` with ``2^{t-1} < n <= 2^t`` unless given; ``i = 2^t-3-n``, ``j = n-2^{t-1}+1``."""
    if t is None:
        t = max(1, (n - 1).bit_length())
    return CaseIndices(n, t, 2 ** t - 3 - n, n - 2 ** (t - 1) + 1)


def _k3_range(n: int) -> CaseIndices:
    ci = case_indices(n)
    if not (2 ** (ci.t - 1) < n <= 2 ** ci.t - 4):
        raise ValueError(f"need 2^(t-1) < n <= 2^t - 4, got n={n}")
    return ci


def k3_kernel_basis(n: int) -> tuple[RelationVec, RelationVec]:
    """The free W2-basis ``u`` (ascended) and ``v`` (descended) of ker(d_1)."""
    ci = _k3_range(n)
    ctx = context(3)
    w3 = Poly2.var(ctx.w2, 3)
    q, r = ctx.q, ctx.r
    i, j = ci.i, ci.j
    u = make_relation(3, n, [r(j), w3 * r(j - 2), r(j - 1)])
    v = make_relation(3, n, [w3 * q(i - 1), q(i + 1), q(i)])
    return u, v


def lemma_linear_eqs(n: int, t: Optional[int] = None) -> bool:
    """The three bilinear identities linking q's and r's at level n."""
    ci = case_indices(n, t)
    ctx = context(3)
    w3 = Poly2.var(ctx.w2, 3)
    q, r = ctx.q, ctx.r
    i, j = ci.i, ci.j
    return (
        w3 * r(j - 2) * q(i) + r(j - 1) * q(i + 1) == q(n - 2)
        and r(j) * q(i) + w3 * r(j - 1) * q(i - 1) == q(n - 1)
        and r(j) * q(i + 1) + w3 * w3 * r(j - 2) * q(i - 1) == q(n)
    )


def determinant_identities(n: int) -> bool:
    """Each q in the window is the 2x2 minor of (u, v) on the other two slots."""
    u, v = k3_kernel_basis(n)
    ctx = context(3)
    minors = []
    for a, b in ((1, 2), (0, 2), (0, 1)):
        minors.append(u.coeffs[a] * v.coeffs[b] + u.coeffs[b] * v.coeffs[a])
    return minors == [ctx.q(n - 2), ctx.q(n - 1), ctx.q(n)]


def k3_closed_relation_rows(n: int) -> list[list[Poly2]]:
    """Coefficient rows ``(coeff of A, coeff of D)`` of the three relations."""
    ci = _k3_range(n)
    ctx = context(3)
    w3 = Poly2.var(ctx.w2, 3)
    q, r = ctx.q, ctx.r
    i, j = ci.i, ci.j
    return [
        [q(i), r(j - 1)],
        [q(i + 1), w3 * r(j - 2)],
        [w3 * q(i - 1), r(j)],
    ]


def k3_generator_degrees(n: int) -> list[int]:
    ci = _k3_range(n)
    return [3 * n - 2 ** ci.t - 1, 2 ** ci.t - 4]


def k3_closed_presentation(n: int) -> Presentation:
    """Generators (A, D) and the three closed-form relations, cohomological degrees."""
    gens = k3_generator_degrees(n)
    rels = []
    for row in k3_closed_relation_rows(n):
        degs = {f.degree + a for f, a in zip(row, gens) if not f.is_zero()}
        (b,) = degs
        rels.append(Relation(b, [str(f) for f in row]))
    return Presentation("W2", gens, rels)


def closed_relation_images(n: int) -> list[RelationVec]:
    """``lambda_A u + lambda_D v`` for each closed-form relation, as Koszul 1-chains."""
    u, v = k3_kernel_basis(n)
    out = []
    for la, ld in k3_closed_relation_rows(n):
        coeffs = [la * cu + ld * cv for cu, cv in zip(u.coeffs, v.coeffs)]
        out.append(make_relation(3, n, coeffs))
    return out


def koszul_d2_columns(n: int) -> list[tuple[Poly2, Poly2, Poly2]]:
    """The three generators of im(d_2) for k = 3 in slot order."""
    ctx = context(3)
    a, b, c = ctx.q(n - 2), ctx.q(n - 1), ctx.q(n)
    z = Poly2.zero(ctx.w2)
    return [(b, a, z), (c, z, a), (z, c, b)]


def drop_vanishing_slots(rel: RelationVec) -> RelationVec:
    """Zero the coefficients sitting on slots whose q vanishes.

    Such a slot is a cycle on its own, so a relation is only meaningful up
    to multiples of it.
    """
    ctx = context(rel.k)
    cs = [Poly2.zero(c.vars) if ctx.q(j).is_zero() else c for c, j in zip(rel.coeffs, rel.q_indices)]
    return RelationVec(rel.k, rel.n, tuple(cs), rel.koszul_degree, rel.note)


def boundary_membership(K: KoszulComplex, rel: RelationVec, drop_vanishing: bool = False) -> bool:
    """True iff ``rel`` lies in the image of ``d_2`` in its Koszul degree.

    With ``drop_vanishing`` the coefficients on vanishing q's are discarded
    first (see ``drop_vanishing_slots``).
    """
    if (K.k, K.n) != (rel.k, rel.n):
        raise ValueError("relation and Koszul complex disagree on (k, n)")
    if not rel.verify():
        raise ValueError("not a relation")
    if drop_vanishing:
        rel = drop_vanishing_slots(rel)
    D = rel.koszul_degree
    v = K.vector(rel.coeffs, D)
    if v.is_zero():
        return True
    if K.k < 2:
        return False
    return Echelon(K.dim(1, D), K.differential(2, D)).contains(v)


def rq_lemma(t: int) -> bool:
    """``r_{2^{t-1}-2} = q_{2^t-4}``, ``w_3 r_{2^{t-1}-4} = q_{2^t-5}``, ``r_{2^{t-1}-1} = q_{2^t-2}``."""
    ctx = context(3)
    w3 = Poly2.var(ctx.w2, 3)
    h = 2 ** (t - 1)
    return (
        ctx.r(h - 2) == ctx.q(2 ** t - 4)
        and w3 * ctx.r(h - 4) == ctx.q(2 ** t - 5)
        and ctx.r(h - 1) == ctx.q(2 ** t - 2)
    )


# --------------------------------------------------------------------------
# the classes A_n, D_n in W1


@dataclass(frozen=True)
class ADClasses:
    n: int
    t: int
    A: Poly2
    D: Poly2


def _ad_coeffs(ci: CaseIndices) -> tuple[list[Poly2], list[Poly2]]:
    """W2 coefficients of the ascended and descended relations, on (p_n, p_{n-1}, p_{n-2})."""
    ctx = context(3)
    w3 = Poly2.var(ctx.w2, 3)
    q, r = ctx.q, ctx.r
    i, j = ci.i, ci.j
    return [r(j - 1), w3 * r(j - 2), r(j)], [q(i), q(i + 1), w3 * q(i - 1)]


def _boundary(ci: CaseIndices, coeffs: list[Poly2], fam) -> Poly2:
    acc = Poly2.zero(W1(3))
    for c, m in zip(coeffs, (ci.n, ci.n - 1, ci.n - 2)):
        acc = acc + c.in_w1() * fam(m)
    return acc


def build_AD(n: int, t: Optional[int] = None) -> ADClasses:
    ci = case_indices(n, t)
    ctx = context(3)
    ca, cd = _ad_coeffs(ci)
    return ADClasses(n, ci.t, _boundary(ci, ca, ctx.p), _boundary(ci, cd, ctx.p))


def ad_kernel_check(n: int, t: Optional[int] = None) -> bool:
    """``w_1 A = sum f Q`` and ``w_1 D = sum g Q``, so both are killed by w_1 modulo (Q)."""
    ci = case_indices(n, t)
    ctx = context(3)
    ad = build_AD(n, t)
    w1 = Poly2.var(W1(3), 1)
    ca, cd = _ad_coeffs(ci)
    return w1 * ad.A == _boundary(ci, ca, ctx.Q) and w1 * ad.D == _boundary(ci, cd, ctx.Q)


def in_Q_ideal(f: Poly2, n: int) -> bool:
    """Membership of a homogeneous W1 polynomial in ``(Q_{n-2}, Q_{n-1}, Q_n)``."""
    f = f.in_w1()
    if f.is_zero():
        return True
    d = f.degree
    if d is None:
        raise ValueError("need a homogeneous polynomial")
    vars = W1(3)
    target = mono_basis(vars, d)
    ctx = context(3)
    blocks = []
    for m in (n - 2, n - 1, n):
        g = ctx.Q(m)
        if g.is_zero() or m > d:
            continue
        blocks.append(mul_matrix(g, mono_basis(vars, d - m), target))
    span = Echelon(len(target), F2Mat.vstack(blocks, len(target)) if blocks else None)
    return span.contains(slice_matrix([f], target).row(0))


def square_t(n: int, which: str) -> int:
    if which == "D":
        return max(1, (n - 1).bit_length())
    if which == "A":
        return n.bit_length()
    raise ValueError(f"which must be 'A' or 'D', got {which!r}")


def square_in_ideal(n: int, which: str) -> bool:
    t = square_t(n, which)
    if which == "D" and not (2 ** (t - 1) < n <= 2 ** t - 3):
        raise ValueError(f"D square needs 2^(t-1) < n <= 2^t - 3, got n={n}")
    if which == "A" and not (2 ** (t - 1) <= n < 2 ** t - 3):
        raise ValueError(f"A square needs 2^(t-1) <= n < 2^t - 3, got n={n}")
    ad = build_AD(n, t)
    f = ad.D if which == "D" else ad.A
    return in_Q_ideal(f ** 2, n)
