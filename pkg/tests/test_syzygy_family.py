import pytest
from hypothesis import given, strategies as st

from ogc import syzygy_family as sf
from ogc.koszul import build
from ogc.module_pres import in_ideal, present_K, presented_hilbert
from ogc.graded import c_algebra
from ogc.poly_ring import W1, Poly2, W2


def test_make_relation_validates():
    # q_5 = 0 for k = 3, so (1, 0, 0) on q_5, q_6, q_7 is a relation
    r = sf.make_relation(3, 7, [1, 0, 0])
    assert r.verify() and not r.is_zero() and r.koszul_degree == 5
    with pytest.raises(ValueError):
        sf.make_relation(3, 7, [0, 0, 1])
    with pytest.raises(ValueError):
        sf.make_relation(3, 7, [1, 0])
    with pytest.raises(ValueError):
        sf.make_relation(3, 7, ["w_2", 1, 0])


@pytest.mark.parametrize("t", [4, 5, 6])
def test_recursions_match_closed_forms_k3(t):
    for i in range(0, 2 ** t - 5):
        assert sf.descend(3, sf.descend_start(3, t), i) == sf.k3_descended_closed(t, i)
    for j in range(0, 30):
        assert sf.ascend(3, sf.ascend_start(3, t), j) == sf.k3_ascended_closed(t, j)


@pytest.mark.parametrize("t", [4, 5])
def test_recursions_match_closed_forms_k4(t):
    for i in range(0, 2 ** t - 6):
        assert sf.descend(4, sf.descend_start(4, t), i) == sf.k4_descended_closed(t, i)
    for i in range(0, 12):
        assert sf.ascend(4, sf.ascend_start(4, t), i) == sf.k4_ascended_closed(t, i)


@given(st.integers(3, 4), st.integers(4, 5), st.integers(0, 8))
def test_recursions_preserve_relations(k, t, steps):
    d = sf.descend(k, sf.descend_start(k, t), min(steps, 2 ** t - k - 4))
    a = sf.ascend(k, sf.ascend_start(k, t), steps)
    assert d.verify() and a.verify()
    assert a.koszul_degree == sf.ascend_start(k, t).koszul_degree + k * steps


def test_kernel_basis_degrees():
    u, v = sf.k3_kernel_basis(12)
    assert (u.koszul_degree, v.koszul_degree) == (20, 13)
    u, v = sf.k3_kernel_basis(11)
    assert (u.koszul_degree, v.koszul_degree) == (17, 13)
    with pytest.raises(ValueError):
        sf.k3_kernel_basis(13)


@pytest.mark.parametrize("t", [3, 4, 5, 6])
def test_linear_equations_and_rq(t):
    for n in range(2 ** (t - 1) - 1, 2 ** t - 2):
        assert sf.lemma_linear_eqs(n, t)
    assert sf.rq_lemma(t)


@pytest.mark.parametrize("n", list(range(9, 13)) + list(range(17, 29)))
def test_closed_presentation_equals_engine(n):
    P = sf.k3_closed_presentation(n)
    K = present_K(3, n)
    t = (n - 1).bit_length()
    assert sorted(P.generator_degrees) == sorted(K.generator_degrees) == sorted([2 ** t - 4, 3 * n - 2 ** t - 1])
    assert sorted(P.relation_degrees) == sorted(K.relation_degrees) == [2 * n - 4, 2 * n - 3, 2 * n - 2]
    h = presented_hilbert(c_algebra(3, n), P.generator_degrees, sf.k3_closed_relation_rows(n))
    assert h == K.hilbert
    assert sf.determinant_identities(n)


def test_boundary_truths():
    for t in (4, 5, 6):
        n = 2 ** (t - 1)
        d = sf.descend(3, sf.descend_start(3, t), 2 ** t - 3 - n)
        assert sf.boundary_membership(build(3, n), d)
        n = 2 ** t - 3
        a = sf.ascend(3, sf.ascend_start(3, t - 1), n - (2 ** (t - 1) - 1))
        assert sf.boundary_membership(build(3, n), a, drop_vanishing=True)
    # inside the interval the descended relation is a genuine generator
    d = sf.descend(3, sf.descend_start(3, 4), 1)
    assert not sf.boundary_membership(build(3, 12), d)


@pytest.mark.parametrize("n", [9, 10, 11, 12, 20])
def test_closed_relations_are_boundaries(n):
    K = build(3, n)
    assert all(sf.boundary_membership(K, r) for r in sf.closed_relation_images(n))


def test_ad_classes():
    ad = sf.build_AD(12)
    assert (ad.A.degree, ad.D.degree) == (19, 12)
    assert sf.build_AD(11).A.degree == 16
    for n in range(9, 13):
        assert sf.ad_kernel_check(n)


@pytest.mark.parametrize("t", [4, 5])
def test_squares_in_ideal(t):
    for n in range(2 ** (t - 1) + 1, 2 ** t - 2):
        assert sf.square_in_ideal(n, "D")
    for n in range(2 ** (t - 1), 2 ** t - 3):
        assert sf.square_in_ideal(n, "A")


def test_ideal_negative_control():
    # w_2^12 happens to lie in the ideal, so a mixed w_1 monomial serves as control
    f = Poly2.mono(W1(3), (15, 3, 1))
    assert not sf.in_Q_ideal(f, 12)


@pytest.mark.parametrize("k,n", [(4, 16), (5, 16), (6, 16), (5, 32), (7, 16), (3, 8), (3, 16)])
def test_fundamental_is_nontrivial_relation(k, n):
    r = sf.fundamental_vec(k, n)
    assert r.verify() and not r.is_zero()
    if k >= 5:
        assert not sf.boundary_membership(build(k, n), r)


def test_fundamental_requires_power_of_two():
    with pytest.raises(ValueError):
        sf.fundamental_vec(5, 18)
    with pytest.raises(ValueError):
        sf.fundamental_vec(16, 16)
