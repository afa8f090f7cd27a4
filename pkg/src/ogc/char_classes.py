"""Characteristic-class polynomial families.

``q_j`` (dual classes with ``w_1 = 0``), ``Q_j`` (Giambelli determinants over
W1), ``p_j`` and ``P_j = w_1 p_j = Q_j + q_j``, the k=3 sequence ``r_j``,
mod-2 multinomials and the two-power syzygy.  The recursions are the
canonical producers; the determinant and the closed forms are kept as
independent oracles.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import Sequence

from .poly_ring import W1, W2, Poly2, VarSet, _compositions


class ClassContext:
    """Memoized sequences for a fixed rank ``k``."""

    def __init__(self, k: int):
        if k < 2:
            raise ValueError("k must be at least 2")
        self.k = k
        self.w2 = W2(k)
        self.w1 = W1(k)
        self._q: list[Poly2] = [Poly2.one(self.w2)]
        self._Q: list[Poly2] = [Poly2.one(self.w1)]
        self._p: list[Poly2] = [Poly2.zero(self.w1)]
        self._r: list[Poly2] = [Poly2.one(self.w2)]

    def w(self, i: int, ring: VarSet | None = None) -> Poly2:
        return Poly2.var(ring or self.w1, i)

    def q(self, j: int) -> Poly2:
        if j < 0:
            return Poly2.zero(self.w2)
        while len(self._q) <= j:
            m = len(self._q)
            acc = Poly2.zero(self.w2)
            for l in range(2, self.k + 1):
                if m - l >= 0:
                    acc = acc + Poly2.var(self.w2, l) * self._q[m - l]
            self._q.append(acc)
        return self._q[j]

    def Q(self, j: int) -> Poly2:
        if j < 0:
            return Poly2.zero(self.w1)
        while len(self._Q) <= j:
            m = len(self._Q)
            acc = Poly2.zero(self.w1)
            for l in range(1, self.k + 1):
                if m - l >= 0:
                    acc = acc + Poly2.var(self.w1, l) * self._Q[m - l]
            self._Q.append(acc)
        return self._Q[j]

    def p(self, j: int) -> Poly2:
        if j < 0:
            return Poly2.zero(self.w1)
        while len(self._p) <= j:
            m = len(self._p)
            acc = self.q(m - 1).in_w1()
            for l in range(1, self.k + 1):
                if m - l >= 0:
                    acc = acc + Poly2.var(self.w1, l) * self._p[m - l]
            self._p.append(acc)
        return self._p[j]

    def P(self, j: int) -> Poly2:
        return Poly2.var(self.w1, 1) * self.p(j)

    def r(self, j: int) -> Poly2:
        """k=3 sequence ``r_{j+1} = w_2 r_j + w_3^2 r_{j-2}``."""
        if self.k != 3:
            raise ValueError("r_j is only defined for k = 3")
        if j < 0:
            return Poly2.zero(self.w2)
        w2 = Poly2.var(self.w2, 2)
        w33 = Poly2.var(self.w2, 3) ** 2
        while len(self._r) <= j:
            m = len(self._r)
            prev2 = self._r[m - 3] if m - 3 >= 0 else Poly2.zero(self.w2)
            self._r.append(w2 * self._r[m - 1] + w33 * prev2)
        return self._r[j]


@lru_cache(maxsize=None)
def context(k: int) -> ClassContext:
    return ClassContext(k)


def q_poly(k: int, j: int) -> Poly2:
    return context(k).q(j)


def p_poly(k: int, j: int) -> Poly2:
    return context(k).p(j)


def P_poly(k: int, j: int) -> Poly2:
    return context(k).P(j)


def r_poly(j: int) -> Poly2:
    return context(3).r(j)


# --------------------------------------------------------------------------
# oracles


def giambelli_Q(k: int, j: int) -> Poly2:
    """``Q_j`` as the j x j determinant with entry (r, c) = w_{c-r+1}, w_0 = 1.

    Expanded along the first column.  A minor is fixed by its first column
    and the single surviving row above the diagonal, so memoization keeps
    the expansion quadratic in ``j``.
    """
    vars = W1(k)
    if j < 0:
        return Poly2.zero(vars)
    if j == 0:
        return Poly2.one(vars)

    @lru_cache(maxsize=None)
    def minor(c: int, x: int) -> Poly2:
        # columns c..j-1, rows {x} + {c+1..j-1} with x <= c.  Column c is
        # nonzero only in row x (w_{c-x+1}) and row c+1 (w_0 = 1).
        if c == j:
            return Poly2.one(vars)
        acc = Poly2.var(vars, c - x + 1) * minor(c + 1, c + 1)
        if c + 1 < j:
            acc = acc + minor(c + 1, x)
        return acc

    return minor(0, 0)


def multinomial_mod2(a: Sequence[int]) -> int:
    """Parity of ``|a|! / prod a_i!``: 1 iff the binary expansions are disjoint."""
    seen = 0
    for x in a:
        if x < 0:
            return 0
        if seen & x:
            return 0
        seen |= x
    return 1


def multinomial_exact(a: Sequence[int]) -> int:
    total = 0
    out = 1
    for x in a:
        total += x
        out *= math.comb(total, x)
    return out


def lucas_descents(a: Sequence[int]) -> list[int]:
    """Indices ``l`` with ``a_l >= 1`` whose decrement has odd multinomial."""
    out = []
    for l, x in enumerate(a):
        if x >= 1:
            b = list(a)
            b[l] -= 1
            if multinomial_mod2(b):
                out.append(l)
    return out


def q_closed_form(k: int, j: int) -> Poly2:
    """``q_j = sum over a with sum i*a_i = j of binom(|a|, a) w^a``."""
    vars = W2(k)
    if j < 0:
        return Poly2.zero(vars)
    terms = []
    for a in _compositions(tuple(range(2, k + 1)), j):
        if multinomial_mod2(a):
            terms.append((0,) + a)
    return Poly2(vars, terms)


def r_closed(j: int) -> Poly2:
    """``r_j = sum over 2b_2 + 6b_3 = 2j of binom(b_2+b_3, b_2) w_2^b2 w_3^(2 b_3)``."""
    vars = W2(3)
    if j < 0:
        return Poly2.zero(vars)
    terms = []
    for b3 in range(j // 3 + 1):
        b2 = j - 3 * b3
        if multinomial_mod2((b2, b3)):
            terms.append((0, b2, 2 * b3))
    return Poly2(vars, terms)


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def even_sum(k: int, n: int) -> Poly2:
    """``sum_{i even, 0 <= i <= k} w_i q_{n-i}`` with ``w_0 = 1``."""
    ctx = context(k)
    acc = Poly2.zero(ctx.w2)
    for i in range(0, k + 1, 2):
        acc = acc + Poly2.var(ctx.w2, i) * ctx.q(n - i)
    return acc


def odd_sum(k: int, n: int) -> Poly2:
    """``sum_{i odd, 1 < i <= k} w_i q_{n-i}``."""
    ctx = context(k)
    acc = Poly2.zero(ctx.w2)
    for i in range(3, k + 1, 2):
        acc = acc + Poly2.var(ctx.w2, i) * ctx.q(n - i)
    return acc


def check_fundamental(k: int, n: int) -> bool:
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    return even_sum(k, n).is_zero()


def multinomial_sum_identity(a: Sequence[int]) -> bool:
    """``binom(|a|, a) == sum_j binom(|a|-1, a with the (2j)-weight entry decremented)`` mod 2.

    ``a`` is indexed by weights 2..k; only even weights contribute.
    """
    lhs = multinomial_mod2(a)
    rhs = 0
    for pos, x in enumerate(a):
        weight = pos + 2
        if weight % 2 == 0 and x >= 1:
            b = list(a)
            b[pos] -= 1
            rhs ^= multinomial_mod2(b)
    return lhs == rhs


def small_tuples(max_total: int, length: int):
    for a in product(range(max_total + 1), repeat=length):
        if sum(a) <= max_total:
            yield a
