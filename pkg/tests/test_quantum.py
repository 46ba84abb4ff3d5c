from ncdyck.coeff import VLaurent, numeric_model, symbolic_model
from ncdyck.ncalg import Q_ELEMENT
from ncdyck.quantum import (QTorusElem, pi_v, poly_at, verify_quantum,
                            z_combinatorial)


def test_specialization_of_q():
    assert pi_v(Q_ELEMENT) == QTorusElem.monomial((0, 0), VLaurent.v_power(-2))


def test_torus_commutation():
    Z1 = QTorusElem.monomial((1, 0))
    Z2 = QTorusElem.monomial((0, 1))
    assert Z1 * Z2 == QTorusElem.monomial((1, 1), VLaurent.v_power(1))
    assert Z1 * Z2 == VLaurent.v_power(2) * (Z2 * Z1)
    assert (Z1 * Z2) * Z1 == Z1 * (Z2 * Z1)


def test_bar_invariance_of_combinatorial_z():
    model = symbolic_model(2, 2)
    z = z_combinatorial(model, 3)
    barred = QTorusElem._raw({a: c.bar() for a, c in z.items()})
    assert barred == z


def test_exchange_relation_directly():
    model = symbolic_model(2, 2)
    z2 = z_combinatorial(model, 2)
    z3 = z_combinatorial(model, 3)
    z4 = z_combinatorial(model, 4)
    # Z_{k-1} Z_{k+1} = P(v Z_k) with the quantum coefficient shift
    assert z2 * z4 == poly_at(model.p_k(6), z3)


def test_verify_quantum_small_ranges():
    for d1, d2 in [(2, 2), (4, 1)]:
        model = symbolic_model(d1, d2)
        reps = verify_quantum(model, -2, 4)
        assert reps
        for r in reps:
            assert r.exchange_ok is not False, (d1, d2, r.m, r.mismatch)
            assert r.specialization_ok is not False, (d1, d2, r.m, r.mismatch)


def test_quantum_with_numeric_coefficients():
    model = numeric_model(2, 3)
    for r in verify_quantum(model, -1, 3):
        assert r.exchange_ok is not False and r.specialization_ok is not False
