"""Hypothesis strategies for small polynomials over finite fields."""
from hypothesis import strategies as st

from drinfeld_selfisog.algebra_core import FieldCtx, PolyRing

FIELDS = {q: FieldCtx.of_order(q) for q in (2, 3, 4, 5, 7, 8, 9)}


def polys(ring: PolyRing, max_terms: int = 5, max_exp: int = 3, nonzero: bool = False):
    n = ring.n
    term = st.tuples(st.tuples(*[st.integers(0, max_exp)] * n),
                     st.integers(1, ring.ctx.q - 1))

    def build(terms):
        f = ring.zero
        for e, c in terms:
            f = f + ring.monomial(e, ring.ctx.elem(c))
        return f

    s = st.lists(term, min_size=1 if nonzero else 0, max_size=max_terms).map(build)
    return s.filter(lambda f: not f.is_zero()) if nonzero else s


def a_elems(ctx: FieldCtx, max_deg: int = 3, nonzero: bool = False):
    s = st.lists(st.integers(0, ctx.q - 1), min_size=0, max_size=max_deg + 1)
    s = s.map(lambda cs: _trim(list(cs)))
    return s.filter(bool) if nonzero else s


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a
