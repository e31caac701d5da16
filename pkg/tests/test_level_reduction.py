from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from drinfeld_selfisog.algebra_core import FieldCtx, PolyRing, QuotientRing
from drinfeld_selfisog.errors import HypothesisViolation, HypothesisWarning, InvalidInput
from drinfeld_selfisog.level_reduction import (bound_Nq, bound_Nq_cases, bound_pairs,
                                               a0_field_guards, lift_choice_bound,
                                               lift_constraints, rank_reduction)
from drinfeld_selfisog.selfisog_modpoly import coefficients_from_root, modular_poly_g
from drinfeld_selfisog.skew_drinfeld import DrinfeldModule, SkewPoly

big_q = st.sampled_from([5, 7, 11, 13, 25, 49, 125])


@given(big_q)
def test_bound_pairs_closed_form(q):
    assert bound_pairs(q) == 30 * q ** 9 - 5 * q ** 8


@given(big_q)
def test_cases_sum_and_gap(q):
    cases = bound_Nq_cases(q)
    assert cases["total"] == cases["generic"] + cases["a0_in_Fq3"] + cases["a0_in_Fq4"]
    # the closed form falls short of the case sum by this amount
    gap = (q ** 3 + 1) * (q ** 2 - 1) * (q ** 13 - q ** 11)
    assert cases["total"] - bound_Nq(q) == gap


@given(big_q)
def test_bound_Nq_fraction_evaluator(q):
    x = Fraction(q)
    val = (x ** 3 + 1) * (x ** 2 - 1) * (30 * x ** 15 - 4 * x ** 14 + x ** 12 + 2 * x ** 11
                                        - x ** 10 - 2 * x ** 9 - x ** 8)
    assert bound_Nq(q) == val


def test_small_characteristic_guard():
    with pytest.raises(HypothesisViolation):
        bound_pairs(3)
    with pytest.raises(HypothesisViolation):
        bound_Nq(4)
    with pytest.warns(HypothesisWarning):
        assert bound_pairs(2, allow_small_p=True) == 30 * 2 ** 9 - 5 * 2 ** 8


def test_lift_helpers():
    assert lift_choice_bound(5) == 126 * 5 ** 6
    guards = a0_field_guards(5)
    assert [g["possible"] for g in guards] == [False, False, True, True]
    assert guards[2]["a1_degree_value"] == 31
    sysl = lift_constraints()
    assert len(sysl.relations) == 6
    assert str(sysl.relations[5]) == "Delta^(q^3+1) = g6"
    with pytest.raises(InvalidInput):
        lift_constraints(["g1", "g2"])


def test_rank_reduction_keeps_isogeny():
    F2 = FieldCtx.of_order(2)
    data = modular_poly_g(2, 3, 1, F2)
    g1, g2 = coefficients_from_root(data)
    Q = QuotientRing(data.ring.parse("y^3 + y + T"))
    phi = DrinfeldModule([Q(g1), Q(g2), Q.one], parent=Q)
    u = SkewPoly([Q.y, Q.one], Q)
    cert = rank_reduction(phi, [1, 1, 1], u)
    assert cert.target_rank == 6 and cert.d == 2 and cert.commutes
    with pytest.raises(InvalidInput):
        rank_reduction(phi, [1])                     # degree 0
    ring = PolyRing(FieldCtx.of_order(3), ("T",))
    phi3 = DrinfeldModule([ring.one, ring.one], parent=ring)
    with pytest.raises(InvalidInput):
        rank_reduction(phi3, [1, 2])                 # not monic
