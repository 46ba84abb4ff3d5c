import pytest

import helpers

from ncdyck.coeff import symbolic_model
from ncdyck.dyck import ChebyshevTable, standard_path
from ncdyck.grading import enumerate_half, is_piecewise_compatible
from ncdyck.cluster import (HypothesisNotMet, blocking_collapse,
                            collapse_check, edge_weight, enumerate_pc,
                            verify_main, y_nc, y_of_grading, y_of_omega_h,
                            y_pc)

m22 = symbolic_model(2, 2)
t22 = ChebyshevTable(2, 2)


def test_edge_weights():
    word, coeff = edge_weight(m22, "V", 1).monomial()
    assert word == (("X", 2), ("Y", -1), ("X", -1))
    assert str(coeff) == "p[2,1]"
    word, coeff = edge_weight(m22, "H", 2).monomial()
    assert word == (("Y", 2), ("X", -1))
    assert coeff.is_one()


def test_weight_of_a_single_edge_path():
    D1 = standard_path(t22, 1)
    g = y_of_grading(m22, D1, (2,), ())
    assert g.monomial()[0] == (("Y", 2), ("X", -1))


def test_combinatorial_equals_recursive_small():
    for r in verify_main(m22, 4):
        assert r.equal and r.pseudo_positive and r.q_shift, r.m
        assert not r.truncated


def test_pc_sum_splits_into_compatible_and_not():
    D3 = standard_path(t22, 3)
    for oh in enumerate_half(3, 2):
        pc = y_pc(m22, t22, 3, fixed_h=oh)
        nc = y_nc(m22, t22, 3, fixed_h=oh)
        yh = y_of_omega_h(m22, D3, oh)
        assert pc.value == yh.value + nc.value, oh
        assert pc.count == yh.count + nc.count


def test_enumerate_pc_agrees_with_brute_force():
    for oh in enumerate_half(3, 2):
        brute = {(oh, ov) for ov in enumerate_half(2, 2)
                 if is_piecewise_compatible(t22, 3, oh, ov)}
        assert set(enumerate_pc(t22, 3, fixed_h=oh)) == brute


def test_collapse_to_single_inverse():
    D1 = standard_path(t22, 1)
    cc = collapse_check(m22, D1, (0,), ())
    assert cc.monomial()[0] == (("X", -1),)


def test_collapse_requires_unbounded_maximality():
    # (0,0,2) is maximal among d2-bounded completions but the unbounded
    # completion (0,0,3) is compatible, so the hypothesis fails
    m32 = symbolic_model(3, 2)
    path = standard_path(ChebyshevTable(3, 2), 3)
    with pytest.raises(HypothesisNotMet):
        collapse_check(m32, path, (1, 1, 0, 1, 0), (0, 0, 2))


def test_blocking_collapse_example():
    bc = blocking_collapse(m22, t22, 3, (2, 0, 0), (1, 2))
    assert str(bc) == "p[2,1] Y X Y^-1 X^-1"


def test_blocking_collapse_requires_zero_tail_statistic():
    m32 = symbolic_model(3, 2)
    t32 = ChebyshevTable(3, 2)
    with pytest.raises(HypothesisNotMet):
        blocking_collapse(m32, t32, 3, (0, 0, 0, 3, 0), (0, 0, 2))


def test_collapse_suites_exhaustively():
    assert helpers.run_collapse_suite(2, 2, 3) == (2, 4, 0)
    assert helpers.run_collapse_suite(2, 2, 4) == (3, 14, 0)
    n_single, n_blocking, n_outside = helpers.run_collapse_suite(3, 2, 3)
    assert n_single == 3 and n_blocking == 110 and n_outside == 105


def test_copy_product_factorization():
    assert helpers.check_factorization_h(2, 2, 3) == 27
    assert helpers.check_factorization_v(2, 2, 3) is True


def test_degree_four_primed_factorization():
    assert helpers.check_factorization_v_degree4(4) == 125


def test_incompatible_factorizations_small():
    assert helpers.check_incompatible_factorization_h(2, 2, 3) == 4
    assert helpers.check_incompatible_factorization_v(2, 2, 3) == 4
