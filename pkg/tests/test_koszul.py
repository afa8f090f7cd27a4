import pytest

from ogc.graded import c_algebra
from ogc.koszul import H1Module, build
from ogc.module_pres import anomalous_module, top_dimension

CASES = [(2, 5), (3, 6), (3, 9), (3, 12), (4, 9), (4, 12)]


@pytest.mark.parametrize("k,n", CASES)
def test_d_squared_is_zero(k, n):
    K = build(k, n)
    for D in range(0, sum(K.q_degrees) + 1):
        for i in range(2, k + 1):
            A, B = K.differential(i, D), K.differential(i - 1, D)
            if A.nrows and B.ncols:
                assert (A @ B).is_zero(), (i, D)


@pytest.mark.parametrize("k,n", CASES)
def test_higher_homology_vanishes(k, n):
    """The q's form a regular sequence, so H_i = 0 for i >= 2."""
    K = build(k, n)
    for D in range(0, sum(K.q_degrees) + 1):
        for i in range(2, k + 1):
            assert K.homology_dim(i, D) == 0


@pytest.mark.parametrize("k,n", CASES)
def test_h0_is_C(k, n):
    K = build(k, n)
    C = c_algebra(k, n)
    for D in range(0, C.top + 3):
        assert K.homology_dim(0, D) == C.dim(D)


@pytest.mark.parametrize("k,n", [(2, 3), (3, 12), (4, 18), (6, 12)])
def test_koszul_and_dual_routes_agree(k, n):
    A = anomalous_module(k, n, "koszul")
    B = anomalous_module(k, n, "dual")
    assert A.hilbert() == B.hilbert()


@pytest.mark.parametrize("k,n", [(3, 10), (4, 13)])
def test_h1_shift_and_poincare(k, n):
    K = build(k, n)
    H = H1Module(K)
    C = c_algebra(k, n)
    N = top_dimension(k, n)
    for d in range(0, N + 1):
        assert H.dim(d) == K.homology_dim(1, d + 1)
        assert H.dim(d) == C.dim(N - d)


def test_vector_unpack_roundtrip():
    K = build(3, 12)
    from ogc.syzygy_family import k3_kernel_basis

    u, _ = k3_kernel_basis(12)
    v = K.vector(u.coeffs, u.koszul_degree)
    assert tuple(K.unpack(v, u.koszul_degree)) == u.coeffs
    assert (v.as_matrix() @ K.differential(1, u.koszul_degree)).is_zero()
