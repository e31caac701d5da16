import random

import pytest
from hypothesis import given, strategies as st

from drinfeld_selfisog.algebra_core import FieldCtx, PolyRing
from drinfeld_selfisog.errors import InvalidInput, NotAnIsogeny
from drinfeld_selfisog.level_reduction import lift_constraints
from drinfeld_selfisog.skew_drinfeld import (DrinfeldModule, FormalRing, SkewPoly,
                                             commutation_system, drinfeld_image, dual_isogeny,
                                             homomorphism_check, skew_mul, skew_right_divide)
from drinfeld_selfisog import serialize as ser

from strategies import FIELDS, polys

F3 = FIELDS[3]
RT = PolyRing(F3, ("T",))
coeffs = polys(RT, max_terms=3, max_exp=2)


def skews(min_len=0, max_len=4):
    return st.lists(coeffs, min_size=min_len, max_size=max_len).map(lambda cs: SkewPoly(cs, RT))


@given(skews(), skews(), skews())
def test_composition_associative_and_distributive(f, g, h):
    assert skew_mul(skew_mul(f, g), h) == skew_mul(f, skew_mul(g, h))
    assert skew_mul(f, g + h) == skew_mul(f, g) + skew_mul(f, h)


F9 = FIELDS[9]
f9_skews = st.lists(st.integers(0, 8), max_size=5).map(
    lambda cs: SkewPoly([F9.elem(c) for c in cs], F9))


@given(f9_skews, f9_skews)
def test_right_division_exact(f, g):
    if g.is_zero():
        return
    quo, rem = skew_right_divide(skew_mul(f, g), g)
    assert rem.is_zero() and quo == f
    quo, rem = skew_right_divide(f, g)
    assert skew_mul(quo, g) + rem == f
    assert rem.is_zero() or rem.degree < g.degree


def test_composition_is_not_commutative():
    x = SkewPoly.x(RT)
    Tx = SkewPoly([RT.T], RT)
    tau = SkewPoly.monomial(RT.one, 1, RT)
    assert skew_mul(tau, Tx) != skew_mul(Tx, tau)
    assert skew_mul(x, tau) == tau


def test_drinfeld_module_validation():
    with pytest.raises(InvalidInput):
        DrinfeldModule([RT.one], parent=RT)
    with pytest.raises(InvalidInput):
        DrinfeldModule([RT.one, RT.zero], parent=RT)
    phi = DrinfeldModule([RT.T, RT.one], parent=RT)
    with pytest.raises(InvalidInput):
        drinfeld_image(phi, [0])


@pytest.mark.parametrize("q,r", [(2, 2), (3, 3), (4, 2)])
def test_homomorphism(q, r):
    assert homomorphism_check(q, r, trials=15, seed=q * 10 + r).ok


def test_dual_of_frobenius_isogeny():
    # phi_T = T x + x^q over F_q[T]: u = x^q commutes only if T^q = T, so it is no isogeny
    phi = DrinfeldModule([RT.one, RT.one], parent=RT)
    tau = SkewPoly.monomial(RT.one, 1, RT)
    with pytest.raises(NotAnIsogeny):
        dual_isogeny(phi, tau, [0, 1])
    # phi_T itself is an endomorphism with dual 1 for a = T^2
    uhat = dual_isogeny(phi, phi.phi_T, [0, 0, 1])
    assert uhat == phi.phi_T


def test_formal_parse_roundtrip():
    ring = FormalRing(("T", "h1", "Delta"))
    for text in ["T^(q^3)*Delta + h1^(q+1)", "Delta^(q^3+1)", "2*h1*T^q + 1"]:
        e = ring.parse(text)
        assert ring.parse(str(e)) == e
    assert ring.parse("h1^q").frobenius(2) == ring.parse("h1^(q^3)")


def test_degree_one_commutation_system():
    sys1 = commutation_system(3, None, 1, "T")
    lines = [str(rel) for rel in sys1]
    assert lines[0] == "a0*b0 = T"
    assert lines[-1] == "Delta^q = Delta"
    assert len(commutation_system(3, None, 0, "T").relations) == 3


def test_formal_system_specializes_to_numeric():
    for q in (2, 3):
        formal = commutation_system(2, None, 1, "T")
        numeric = commutation_system(2, q, 1, "T")
        ring = numeric.ring
        spec = [tuple(s.specialize(ring) for s in rel.sides) for rel in formal]
        got = [rel.sides for rel in numeric]
        # specialization can merge sides that are distinct formally (e.g. when q = 2)
        for fs, ns in zip(spec, got):
            assert set(fs) >= set(ns)


def test_lift_system_degree5_numeric_oracle():
    """Compute phi_{T^2+T+1} with concrete coefficients and compare with both readings of line 5."""
    q = 3
    ctx = FieldCtx.of_order(q)
    ring = PolyRing(ctx, ("T",))
    rng = random.Random(5)
    sysl = lift_constraints()
    fr = sysl.ring
    pr = PolyRing(ctx, fr.vars)
    misprint = fr.parse("h1*Delta^(q^2)+Delta*h2^(q^3)")
    for _ in range(5):
        h = [ring.from_univariate("T", [ring.const(ctx.elem(rng.randrange(q))) for _ in range(3)])
             for _ in range(3)]
        if h[2].is_zero():
            continue
        phi = DrinfeldModule(h, parent=ring)
        c5 = drinfeld_image(phi, [1, 1, 1]).coeff(5)
        values = {"h1": h[0].change_ring(pr), "h2": h[1].change_ring(pr), "Delta": h[2].change_ring(pr)}
        ours = sysl.relations[4].sides[0].specialize(pr).evaluate(values).change_ring(ring)
        assert ours == c5
        if h[0] != h[1]:
            assert misprint.specialize(pr).evaluate(values).change_ring(ring) != c5


def test_skew_json_roundtrip():
    phi = DrinfeldModule([RT.parse("T + 1"), RT.one], parent=RT)
    pa = drinfeld_image(phi, [1, 0, 1])
    assert ser.skew_from_json(ser.skew_to_json(pa)) == pa
    formal = commutation_system(2, None, 1, "T").phi_a
    assert ser.skew_from_json(ser.skew_to_json(formal)) == formal
