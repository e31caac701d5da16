import pytest
from hypothesis import given, strategies as st

from drinfeld_selfisog.algebra_core import FieldCtx, PolyRing, QuotientRing, RatFunc
from drinfeld_selfisog.errors import InvalidInput
from drinfeld_selfisog.selfisog_modpoly import (JTuple, coefficients_from_root,
                                                constant_root_check, enumerate_basic_j, j_eval,
                                                modular_poly_g, phi_by_charpoly, phi_delta,
                                                phi_self_T, trial_factors)
from drinfeld_selfisog.skew_drinfeld import DrinfeldModule, SkewPoly, skew_mul

F2 = FieldCtx.of_order(2)


def test_basic_j_examples():
    js = enumerate_basic_j(2, 3)
    assert len(js) == 7
    assert JTuple(2, 3, (1, 2), 1) in js
    assert js == sorted(js, key=lambda j: j.as_list())
    assert [j.as_list() for j in enumerate_basic_j(3, 2)] == [[4, 1]]


@given(st.sampled_from([(2, 2), (2, 3), (3, 2), (4, 2), (2, 4)]))
def test_basic_j_conditions(qr):
    q, r = qr
    for j in enumerate_basic_j(q, r):
        assert j.violation() is None
        weight = sum(d * (q ** i - 1) for i, d in enumerate(j.deltas, start=1))
        assert weight == j.delta_r * (q ** r - 1)


def test_jtuple_rejects():
    with pytest.raises(InvalidInput):
        JTuple.parse(2, 3, "1,2")
    with pytest.raises(InvalidInput):
        JTuple(2, 3, (1, 1), 1)          # weight condition
    with pytest.raises(InvalidInput):
        JTuple(2, 3, (2, 4), 2)          # not coprime
    with pytest.raises(InvalidInput):
        enumerate_basic_j(2, 1)


def test_g_q2_r3():
    data = modular_poly_g(2, 3, 1, F2)
    ring = PolyRing(F2, ("T", "X"))
    assert data.g_poly == ring.parse(
        "X^12 + X^10 + X^9 + X^7 + T*X^5 + (T^2 + T)*X^4 + T^2*X^3 + T^2*X^2 + T^4")
    assert data.constant_roots_ok
    assert data.multiplicities.keys() == {1}


def test_trial_factors_recovers_cubics():
    data = modular_poly_g(2, 3, 1, F2)
    ring = data.g_poly.ring
    facs = trial_factors(data.g_poly, "X", max_deg=3, max_coeff_deg=1)
    assert sorted(map(str, facs)) == sorted(str(ring.parse(c)) for c in
                                            ["X^3 + T", "X^3 + X + T", "X^3 + X^2 + T", "X^3 + X^2 + X + T"])


def test_constant_root_check_detects_constant_factor():
    ring = PolyRing(F2, ("T", "X"))
    ok, common = constant_root_check(ring.parse("(X + 1)*(X^2 + T)"))
    assert not ok and common == ring.parse("X + 1")


def test_j_equals_bracket_form():
    """J = g1 g2^2 / Delta agrees with the bracket expression written in terms of a0."""
    data = modular_poly_g(2, 3, 1, F2)
    J = j_eval(JTuple(2, 3, (1, 2), 1), data)
    R = data.ring
    T, y = RatFunc(R.T), RatFunc(R.gen("y"))
    bracket = (T ** 2 + T) / (y ** 2 + y) * (y ** 2 + (T ** 8 + y ** 4 * T ** 4) / (y ** 16 + y ** 12))
    for c in ["y^3 + T", "y^3 + y + T", "y^3 + y^2 + T", "y^3 + y^2 + y + T"]:
        Q = QuotientRing(R.parse(c))
        assert Q(J) == Q(bracket)


def test_each_root_gives_self_isogeny():
    data = modular_poly_g(2, 3, 1, F2)
    gs = coefficients_from_root(data)
    for c in ["y^3 + T", "y^3 + y + T", "y^3 + y^2 + T", "y^3 + y^2 + y + T"]:
        Q = QuotientRing(data.ring.parse(c))
        phi = DrinfeldModule([Q(g) for g in gs] + [Q.one], parent=Q)
        u = SkewPoly([Q.y, Q.one], Q)
        assert skew_mul(u, phi.phi_T) == skew_mul(phi.phi_T, u)


def test_phi_q3_r2_two_paths():
    jt = enumerate_basic_j(3, 2)[0]
    res = phi_self_T(3, 2, jt)
    assert res.degree == 12
    assert len(res.per_delta) == 2
    for (d, pd), data in zip(res.per_delta, res.data):
        assert pd.lead_coeff_in("X").constant_code() == 1
        assert phi_by_charpoly(jt, data, [data.g_sqf]) == pd


def test_phi_single_delta():
    jt = JTuple(2, 3, (1, 2), 1)
    assert phi_self_T(2, 3, jt, delta=1).phi == phi_delta(jt, modular_poly_g(2, 3, 1))
    with pytest.raises(InvalidInput):
        phi_self_T(2, 3, jt, delta=0)
