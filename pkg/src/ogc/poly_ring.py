"""Weighted polynomial rings over GF(2).

``W1 = F2[w_1..w_k]`` and ``W2 = F2[w_2..w_k]`` with ``deg w_i = i``.  A
monomial is an exponent tuple of length ``k`` (index 0 is ``w_1``); a
polynomial is a frozenset of such tuples.

Monomial order: larger weighted degree first, then lexicographic with
``w_1 > w_2 > ... > w_k``.  Every slice basis and every text form uses it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .f2_linear import F2Mat

Mono = tuple  # exponent tuple, length k


@dataclass(frozen=True)
class VarSet:
    k: int
    includes_w1: bool = False

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("need k >= 2")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(range(1 if self.includes_w1 else 2, self.k + 1))

    def __str__(self) -> str:
        return f"W{1 if self.includes_w1 else 2}(k={self.k})"


def W1(k: int) -> VarSet:
    return VarSet(k, True)


def W2(k: int) -> VarSet:
    return VarSet(k, False)


def wdeg(m: Mono) -> int:
    return sum((i + 1) * e for i, e in enumerate(m))


def mono_key(m: Mono):
    """Sort key putting the larger monomial first."""
    return (-wdeg(m),) + tuple(-e for e in m)


def _mono_text(m: Mono) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"w_{i + 1}")
        elif e > 1:
            parts.append(f"w_{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


class Poly2:
    """Polynomial over GF(2) as a set of exponent tuples."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VarSet, terms: Iterable[Mono] = ()):
        self.vars = vars
        if isinstance(terms, frozenset):
            self.terms = terms
        else:
            acc: set = set()
            for t in terms:
                acc ^= {tuple(t)}
            self.terms = frozenset(acc)
        self._hash = None

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vars: VarSet) -> "Poly2":
        return cls(vars, frozenset())

    @classmethod
    def one(cls, vars: VarSet) -> "Poly2":
        return cls(vars, frozenset([(0,) * vars.k]))

    @classmethod
    def var(cls, vars: VarSet, i: int) -> "Poly2":
        """The variable ``w_i``; ``w_0`` is 1 and ``w_1`` is 0 in W2."""
        if i == 0:
            return cls.one(vars)
        if i < 0 or i > vars.k or (i == 1 and not vars.includes_w1):
            return cls.zero(vars)
        e = [0] * vars.k
        e[i - 1] = 1
        return cls(vars, frozenset([tuple(e)]))

    @classmethod
    def mono(cls, vars: VarSet, m: Mono) -> "Poly2":
        return cls(vars, frozenset([tuple(m)]))

    @classmethod
    def parse(cls, vars: VarSet, text: str) -> "Poly2":
        text = text.strip()
        if text == "0":
            return cls.zero(vars)
        terms = []
        for term in text.split("+"):
            e = [0] * vars.k
            term = term.strip()
            if term != "1":
                for factor in term.split("*"):
                    name, _, exp = factor.partition("^")
                    idx = int(name.strip()[2:])
                    e[idx - 1] += int(exp) if exp else 1
            terms.append(tuple(e))
        return cls(vars, terms)

    # inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {wdeg(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Weighted degree of a homogeneous nonzero polynomial, else None."""
        ds = self.degrees()
        return next(iter(ds)) if len(ds) == 1 else None

    def sorted_terms(self) -> list[Mono]:
        return sorted(self.terms, key=mono_key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(_mono_text(m) for m in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Poly2({self})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other in (0, 1):
            return self == (Poly2.zero(self.vars) if other == 0 else Poly2.one(self.vars))
        return isinstance(other, Poly2) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # arithmetic -------------------------------------------------------

    def _check(self, other: "Poly2") -> None:
        if self.vars.k != other.vars.k:
            raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")

    def __add__(self, other: "Poly2") -> "Poly2":
        self._check(other)
        vars = self.vars if self.vars.includes_w1 else other.vars
        return Poly2(vars, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "Poly2") -> "Poly2":
        self._check(other)
        vars = self.vars if self.vars.includes_w1 else other.vars
        if not self.terms or not other.terms:
            return Poly2.zero(vars)
        acc: set = set()
        for a in self.terms:
            for b in other.terms:
                m = tuple(x + y for x, y in zip(a, b))
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return Poly2(vars, frozenset(acc))

    def __pow__(self, e: int) -> "Poly2":
        out = Poly2.one(self.vars)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def set_w1_zero(self) -> "Poly2":
        return Poly2(VarSet(self.vars.k, False), frozenset(m for m in self.terms if m[0] == 0))

    def in_w1(self) -> "Poly2":
        return Poly2(VarSet(self.vars.k, True), self.terms)

    def coeff_vector(self, sl: "GradedSlice") -> np.ndarray:
        v = np.zeros(len(sl.basis), dtype=np.uint8)
        for m in self.terms:
            v[sl.index[m]] ^= 1
        return v


def add(f: Poly2, g: Poly2) -> Poly2:
    return f + g


def mul(f: Poly2, g: Poly2) -> Poly2:
    return f * g


# --------------------------------------------------------------------------
# graded slices


def _compositions(weights: tuple[int, ...], d: int):
    """All exponent vectors over ``weights`` with weighted sum ``d``."""
    if not weights:
        if d == 0:
            yield ()
        return
    w = weights[0]
    for e in range(d // w, -1, -1):
        for rest in _compositions(weights[1:], d - e * w):
            yield (e,) + rest


@dataclass(frozen=True, eq=False)
class GradedSlice:
    vars: VarSet
    degree: int
    basis: tuple
    index: dict

    def __len__(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=None)
def mono_basis(vars: VarSet, d: int) -> GradedSlice:
    """All monomials of weighted degree ``d``, largest first."""
    if d < 0:
        return GradedSlice(vars, d, (), {})
    weights = tuple(vars.indices)
    lead = 0 if vars.includes_w1 else 1  # number of leading zero slots
    monos = [(0,) * lead + c for c in _compositions(weights, d)]
    monos.sort(key=mono_key)
    basis = tuple(monos)
    return GradedSlice(vars, d, basis, {m: i for i, m in enumerate(basis)})


@lru_cache(maxsize=None)
def hilbert_w2(k: int, d: int) -> int:
    """Number of monomials of weighted degree ``d`` in ``w_2..w_k``."""
    if d < 0:
        return 0
    # partitions of d into parts from {2..k}
    ways = [1] + [0] * d
    for part in range(2, k + 1):
        for s in range(part, d + 1):
            ways[s] += ways[s - part]
    return ways[d]


def slice_matrix(polys, sl: GradedSlice) -> F2Mat:
    """Rows are the coefficient vectors of ``polys`` in the basis of ``sl``."""
    dense = np.zeros((len(polys), len(sl.basis)), dtype=np.uint8)
    idx = sl.index
    for r, f in enumerate(polys):
        for m in f.terms:
            dense[r, idx[m]] ^= 1
    return F2Mat.from_dense(dense)


def mul_matrix(f: Poly2, src: GradedSlice, dst: GradedSlice) -> F2Mat:
    """Matrix of ``m -> f*m``; rows follow ``src``, columns follow ``dst``."""
    fdeg = f.degree
    if fdeg is None and not f.is_zero():
        raise ValueError("mul_matrix needs a homogeneous polynomial")
    if fdeg is not None and dst.degree != src.degree + fdeg:
        raise ValueError(f"degree mismatch: {src.degree} + {fdeg} != {dst.degree}")
    dense = np.zeros((len(src.basis), len(dst.basis)), dtype=np.uint8)
    if f.terms and src.basis and dst.basis:
        idx = dst.index
        for r, m in enumerate(src.basis):
            for t in f.terms:
                dense[r, idx[tuple(x + y for x, y in zip(m, t))]] ^= 1
    return F2Mat.from_dense(dense)
