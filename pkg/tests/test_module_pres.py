import pytest

from ogc.graded import c_algebra
from ogc.koszul import build
from ogc.module_pres import (
    CapTooLow, Presentation, Relation, charrank, check_free_cyclic, check_poincare,
    conjecture_value, ker_d1_degrees, min_gens_ker_d1, nilpotency_witness,
    parse_relation_rows, present_C, present_K, presented_hilbert,
)


def test_present_C_small():
    d = present_C(3, 6)
    assert d.hilbert == c_algebra(3, 6).hilbert()
    assert d.ideal_min_gen_indices and all(4 <= j <= 6 for j in d.ideal_min_gen_indices)
    js = d.to_json()
    assert js["module"] == "C" and js["generators"] == [{"degree": 0}]


def test_present_C_drops_zero_q():
    # q_5 = 0 for k = 3 so it never appears among the ideal generators
    assert 5 not in present_C(3, 7).ideal_min_gen_indices


def test_bad_arguments():
    with pytest.raises(ValueError):
        present_C(4, 4)
    with pytest.raises(ValueError):
        present_K(1, 5)
    with pytest.raises(ValueError):
        nilpotency_witness(3, 8, 5)


def test_nilpotency_bounded_by_top():
    for k, n in [(3, 8), (4, 10)]:
        top = c_algebra(k, n).top
        for v in range(2, k + 1):
            e = nilpotency_witness(k, n, v)
            assert (e - 1) * v <= top


def test_cap_too_low():
    with pytest.raises(CapTooLow):
        min_gens_ker_d1(build(4, 18), cap=24)


def test_kerd1_k4_18():
    assert ker_d1_degrees(4, 18) == [21, 29, 31, 33, 34]


def test_k4_18_presentation_matches_worked_example():
    K = present_K(4, 18)
    assert K.generator_degrees == [20, 28]
    assert sorted(K.relation_degrees) == [31, 32, 34]
    rows = parse_relation_rows(4, [
        ["w_2^4*w_3", "w_3"],
        ["w_2^6+w_3^4+w_2^4*w_4", "w_4"],
        ["w_2^5*w_4", "w_3^2+w_2*w_4"],
    ])
    assert presented_hilbert(c_algebra(4, 18), [20, 28], rows) == K.hilbert


def test_k6_12_presentation_matches_worked_example():
    K = present_K(6, 12)
    assert K.generator_degrees == [14, 15, 16]
    rows = parse_relation_rows(6, [
        ["w_3", "0", "0"],
        ["w_5", "0", "w_3"],
        ["0", "w_2^2", "w_3"],
        ["w_2*w_4+w_6", "w_2*w_3+w_5", "w_4"],
        ["0", "0", "w_2^2"],
        ["0", "w_3^2", "w_2*w_3+w_5"],
    ])
    assert presented_hilbert(c_algebra(6, 12), [14, 15, 16], rows) == K.hilbert


def test_presented_hilbert_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        presented_hilbert(c_algebra(3, 8), [0, 0], parse_relation_rows(3, [["w_2", "w_3"]]))


@pytest.mark.parametrize("k,n,expected", [(5, 10, 10), (6, 19, 30), (3, 12, 11), (4, 18, 19)])
def test_charrank_examples(k, n, expected):
    assert charrank(k, n) == expected


def test_conjecture_value():
    assert conjecture_value(5, 17) == 5 * 1 + 16 - 2
    assert conjecture_value(5, 32) == 30
    with pytest.raises(ValueError):
        conjecture_value(4, 20)
    with pytest.raises(ValueError):
        conjecture_value(9, 12)


@pytest.mark.parametrize("k,n", [(3, n) for n in range(13, 17)] + [(5, 16), (4, 13), (4, 15), (4, 17)])
def test_one_generator_means_free_cyclic(k, n):
    K = present_K(k, n)
    assert len(K.generator_degrees) == 1
    assert check_free_cyclic(k, n)


@pytest.mark.parametrize("k,n", [(3, 12), (4, 11), (5, 11)])
def test_poincare_both_routes(k, n):
    assert check_poincare(k, n, "dual") and check_poincare(k, n, "koszul")


def test_regrade():
    P = Presentation("C", [20, 28], [Relation(31, ["a", "b"])])
    Q = P.regrade("koszul")
    assert Q.generator_degrees == [21, 29] and Q.relation_degrees == [32]
    assert Q.regrade("cohomological").generator_degrees == [20, 28]
    with pytest.raises(ValueError):
        P.regrade("weird")


def test_koszul_json_shift():
    js = present_K(4, 18).to_json("koszul")
    assert [g["degree"] for g in js["generators"]] == [21, 29]
