import pytest
from hypothesis import given
from hypothesis import strategies as st

from ogc.poly_ring import W1, W2, Poly2, hilbert_w2, mono_basis, mul_matrix, slice_matrix, wdeg


def polys(vars, max_terms=5, max_exp=3):
    lead = 0 if vars.includes_w1 else 1
    mono = st.tuples(*([st.just(0)] * lead + [st.integers(0, max_exp)] * (vars.k - lead)))
    return st.lists(mono, max_size=max_terms).map(lambda ts: Poly2(vars, ts))


V = W1(4)


def test_parse_and_print():
    f = Poly2.parse(W2(3), "w_2^3*w_3+w_3^2+1")
    assert str(f) == "w_2^3*w_3+w_3^2+1"
    assert Poly2.parse(W2(3), "0").is_zero()
    assert str(Poly2.one(W2(3))) == "1"


def test_w1_is_zero_in_w2():
    assert Poly2.var(W2(3), 1).is_zero()
    assert not Poly2.var(W1(3), 1).is_zero()
    assert Poly2.var(W2(3), 0) == 1


def test_degree_and_order():
    f = Poly2.parse(W2(3), "w_2^3+w_3^2")
    assert f.is_homogeneous() and f.degree == 6
    assert f.sorted_terms()[0] == (0, 3, 0)  # w_2 before w_3 at equal degree


def test_mixing_rings_lands_in_w1():
    g = Poly2.var(W2(3), 2) * Poly2.var(W1(3), 1)
    assert g.vars.includes_w1


@given(polys(V), polys(V), polys(V))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + f == 0


@given(polys(V))
def test_frobenius(f):
    sq = f ** 2
    assert sq == Poly2(V, [tuple(2 * e for e in m) for m in f.terms])


@given(polys(V))
def test_parse_roundtrip(f):
    assert Poly2.parse(V, str(f)) == f


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_slice_sizes_match_partition_count(k):
    for d in range(0, 25):
        assert len(mono_basis(W2(k), d)) == hilbert_w2(k, d)
        assert all(wdeg(m) == d for m in mono_basis(W2(k), d).basis)


def test_mul_matrix_matches_product():
    vars = W2(3)
    f = Poly2.parse(vars, "w_2+w_3")
    with pytest.raises(ValueError):
        mul_matrix(Poly2.parse(vars, "w_2+w_3^2"), mono_basis(vars, 4), mono_basis(vars, 6))
    src, dst = mono_basis(vars, 6), mono_basis(vars, 8)
    with pytest.raises(ValueError):
        mul_matrix(f, src, dst)
    f = Poly2.parse(vars, "w_2")
    M = mul_matrix(f, src, dst)
    expected = slice_matrix([f * Poly2.mono(vars, m) for m in src.basis], dst)
    assert M == expected
