"""Self-isogenous modular polynomials Phi_{J,T}(X,X) for T-cyclic self-isogenies.

Pipeline: basic J-tuples -> b-recurrence in a0 (written y) -> g(Delta, X) ->
coefficients g_i(y) -> J(y) -> Phi_Delta = monic Res_y(g(y), D(y) X - N(y)).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce

from .algebra_core.fields import FieldCtx, FqElem
from .algebra_core.mpoly import MPoly, PolyRing
from .algebra_core.polyalg import (mgcd, normalize_in, poly_gcd, prem,
                                   primitive_part, resultant,
                                   squarefree_decomposition, squarefree_part)
from .algebra_core.ratfunc import RatFunc
from .errors import (DegenerateJDenominator, IntegralityViolation, InvalidInput,
                     NotDivisible)


# -- basic J-invariants ----------------------------------------------------

@dataclass(frozen=True, order=True)
class JTuple:
    """Exponents (delta_1..delta_{r-1}; delta_r) of J = prod g_i^delta_i / g_r^delta_r."""

    q: int
    r: int
    deltas: tuple[int, ...]
    delta_r: int

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(self.deltas))
        problem = self.violation()
        if problem:
            raise InvalidInput(f"invalid J-tuple {self.as_list()}: {problem}")

    def as_list(self) -> list[int]:
        return [*self.deltas, self.delta_r]

    def violation(self) -> str | None:
        q, r = self.q, self.r
        if r < 2 or len(self.deltas) != r - 1:
            return f"expected {r - 1} exponents before delta_r"
        if any(d < 0 for d in self.as_list()):
            return "exponents must be nonnegative"
        lhs = sum(d * (q ** i - 1) for i, d in enumerate(self.deltas, start=1))
        if lhs != self.delta_r * (q ** r - 1):
            return "weight condition fails"
        for i, d in enumerate(self.deltas, start=1):
            if d > (q ** r - 1) // (q ** math.gcd(i, r) - 1):
                return f"delta_{i} exceeds its bound"
        if reduce(math.gcd, self.as_list()) != 1:
            return "exponents are not coprime"
        return None

    @classmethod
    def parse(cls, q: int, r: int, text: str) -> "JTuple":
        try:
            vals = [int(t) for t in text.replace(";", ",").split(",") if t.strip()]
        except ValueError:
            raise InvalidInput(f"cannot parse J-tuple {text!r}") from None
        if len(vals) != r:
            raise InvalidInput(f"J-tuple for rank {r} needs {r} entries, got {len(vals)}")
        return cls(q, r, tuple(vals[:-1]), vals[-1])

    def __str__(self):
        return "(" + ",".join(map(str, self.deltas)) + f";{self.delta_r})"


def enumerate_basic_j(q: int, r: int) -> list[JTuple]:
    """All basic J-tuples for (q, r), in lexicographic order of (delta_1, ..., delta_r)."""
    if r < 2:
        raise InvalidInput("rank must be at least 2")
    bounds = [(q ** r - 1) // (q ** math.gcd(i, r) - 1) for i in range(1, r)]
    weights = [q ** i - 1 for i in range(1, r)]
    top = q ** r - 1
    out = []
    for ds in itertools.product(*(range(b + 1) for b in bounds)):
        s = sum(d * w for d, w in zip(ds, weights))
        if s % top:
            continue
        dr = s // top
        if reduce(math.gcd, ds, dr) != 1:
            continue
        out.append(JTuple(q, r, ds, dr))
    return out


# -- the b-recurrence --------------------------------------------------------

@dataclass
class SelfIsogData:
    q: int
    r: int
    delta: FqElem
    ring: PolyRing                      # (T, y)
    b: list[RatFunc]
    E: RatFunc
    g_poly: MPoly | None = None         # in (T, X), primitive, normalized
    g_sqf: MPoly | None = None
    multiplicities: dict = field(default_factory=dict)
    constant_roots_ok: bool | None = None
    constant_root_witness: MPoly | None = None
    gi: list[RatFunc] = field(default_factory=list)

    @property
    def ctx(self) -> FieldCtx:
        return self.ring.ctx


def _delta(ctx: FieldCtx, delta) -> FqElem:
    d = delta if isinstance(delta, FqElem) else ctx(delta)
    if d.ctx != ctx:
        raise InvalidInput("Delta lies in another field")
    if d.is_zero():
        raise InvalidInput("Delta must be a nonzero constant")
    return d


def build_recurrence(q: int, r: int, delta=1, ctx: FieldCtx | None = None) -> SelfIsogData:
    """b_0 = T/y, b_i = (b_{i-1}^q - b_{i-1}) / (y^(q^i) - y), plus the closing equation E."""
    if r < 2:
        raise InvalidInput("rank must be at least 2")
    ctx = ctx or FieldCtx.of_order(q)
    if ctx.q != q:
        raise InvalidInput("field context does not have order q")
    d = _delta(ctx, delta)
    ring = PolyRing(ctx, ("T", "y"))
    T, y = ring.gen("T"), ring.gen("y")
    b = [RatFunc(T, y)]
    for i in range(1, r - 1):
        prev = b[-1]
        b.append((prev.frobenius(1) - prev) / RatFunc(y.frobenius(i) - y))
    last = b[-1]
    E = last.frobenius(1) - last - RatFunc((y.frobenius(r - 1) - y) * d)
    return SelfIsogData(q, r, d, ring, b, E)


def constant_root_check(g: MPoly, var: str = "X") -> tuple[bool, MPoly]:
    """Pass iff the T-coefficients of g share no factor in X (no roots in the constants).

    Returns (passed, gcd) where gcd is the common factor over F_q[X].
    """
    if g.is_zero():
        raise InvalidInput("constant_root_check of the zero polynomial")
    coeffs = list(g.coeffs_in("T").values())
    common = reduce(lambda a, c: mgcd(a, c), coeffs[1:], coeffs[0].monic())
    return common.degree(var) <= 0, common


def modular_poly_g(q: int, r: int, delta=1, ctx: FieldCtx | None = None,
                   data: SelfIsogData | None = None) -> SelfIsogData:
    """Compute g(Delta, X): cleared numerator of E, content-free, renamed y -> X."""
    data = data or build_recurrence(q, r, delta, ctx)
    xring = PolyRing(data.ctx, ("T", "X"))
    num = primitive_part(data.E.num, "y")
    g = normalize_in(num.change_ring(xring, {"y": "X"}), "X")
    data.g_poly = g
    data.g_sqf = squarefree_part(g, "X")
    data.multiplicities = squarefree_decomposition(g, "X")
    ok, witness = constant_root_check(g)
    data.constant_roots_ok = ok
    data.constant_root_witness = witness
    return data


def coefficients_from_root(data: SelfIsogData) -> list[RatFunc]:
    """g_1..g_{r-1} as rational functions of the root y = a0."""
    y = RatFunc(data.ring.gen("y"))
    b, r = data.b, data.r
    gi = [y * b[i] + b[i - 1].frobenius(1) for i in range(1, r - 1)]
    gi.append(y * RatFunc(data.ring.const(data.delta)) + b[r - 2].frobenius(1))
    data.gi = gi
    return gi


def j_eval(jt: JTuple, data: SelfIsogData) -> RatFunc:
    if (jt.q, jt.r) != (data.q, data.r):
        raise InvalidInput("J-tuple and recurrence data disagree on (q, r)")
    gi = data.gi or coefficients_from_root(data)
    out = RatFunc(data.ring.one)
    for g, d in zip(gi, jt.deltas):
        if d:
            out = out * g ** d
    if jt.delta_r:
        out = out / RatFunc(data.ring.const(data.delta ** jt.delta_r))
    return out


# -- Phi via resultants ------------------------------------------------------

@dataclass
class PhiResult:
    q: int
    r: int
    jt: JTuple
    phi: MPoly                              # in (T, X), monic in X
    per_delta: list[tuple[FqElem, MPoly]]
    data: list[SelfIsogData]
    shared_factors: list[tuple[int, int, MPoly]]

    @property
    def degree(self) -> int:
        return self.phi.degree("X")


def phi_delta(jt: JTuple, data: SelfIsogData) -> MPoly:
    """Monic-in-X Res_y(g~(y), D(y) X - N(y)) for one Delta."""
    if data.g_sqf is None:
        modular_poly_g(data.q, data.r, data=data)
    J = j_eval(jt, data)
    big = PolyRing(data.ctx, ("T", "y", "X"))
    g = data.g_sqf.change_ring(big, {"X": "y"})
    N, D = J.num.change_ring(big), J.den.change_ring(big)
    common = poly_gcd(g, D, "y")
    if common.degree("y") > 0:
        raise DegenerateJDenominator(common)
    h = D * big.gen("X") - N
    if h.degree("y") >= g.degree("y"):
        h = prem(h, g, "y")   # only rescales the resultant by a power of lc(g)
    res = resultant(g, h, "y")
    if res.degree("X") != g.degree("y"):
        raise IntegralityViolation("resultant lost degree in X")
    xring = PolyRing(data.ctx, ("T", "X"))
    res = res.change_ring(xring)
    return make_monic_integral(res, "X")


def make_monic_integral(f: MPoly, var: str = "X") -> MPoly:
    """Divide by the leading coefficient in ``var``; it must divide every coefficient."""
    lead = f.lead_coeff_in(var)
    try:
        return f.divexact(lead)
    except NotDivisible:
        raise IntegralityViolation(
            f"monic normalization leaves coefficients outside F_q[T] (leading coefficient {lead})"
        ) from None


def phi_self_T(q: int, r: int, jt: JTuple, delta="all", ctx: FieldCtx | None = None) -> PhiResult:
    """Phi_{J,T}(X,X) as the product of Phi_Delta over Delta in the order 1, w, w^2, ..."""
    ctx = ctx or FieldCtx.of_order(q)
    if (jt.q, jt.r) != (q, r):
        raise InvalidInput("J-tuple does not match (q, r)")
    deltas = ([ctx.elem(c) for c in ctx.nonzero_ordered()] if delta == "all"
              else [_delta(ctx, delta)])
    xring = PolyRing(ctx, ("T", "X"))
    per, datas = [], []
    phi = xring.one
    for d in deltas:
        data = modular_poly_g(q, r, d, ctx)
        pd = phi_delta(jt, data)
        per.append((d, pd))
        datas.append(data)
        phi = phi * pd
    shared = []
    for i in range(len(per)):
        for j in range(i + 1, len(per)):
            g = mgcd(per[i][1], per[j][1])
            if g.degree("X") > 0:
                shared.append((i, j, g))
    return PhiResult(q, r, jt, phi, per, datas, shared)


def phi_by_charpoly(jt: JTuple, data: SelfIsogData, factors: list[MPoly]) -> MPoly:
    """Independent path: product of char polys of J on F_q(T)[y]/(h) over the factors h."""
    from .algebra_core.polyalg import charpoly_mult

    J = j_eval(jt, data)
    xring = PolyRing(data.ctx, ("T", "X"))
    out = RatFunc(xring.one)
    for h in factors:
        hy = h.change_ring(data.ring, {"X": "y"}) if "X" in h.ring.vars else h
        cp = charpoly_mult(hy, J, "y", "X")
        out = out * cp.change_ring(xring)
    if not out.is_polynomial():
        raise IntegralityViolation("char-poly product has a non-constant denominator")
    return out.num.scale(out.num.ctx.inv(out.den.lc())) if out.den.lc() != 1 else out.num


def trial_factors(f: MPoly, var: str = "X", max_deg: int = 4, max_coeff_deg: int | None = None) -> list[MPoly]:
    """Monic factors of f of degree <= max_deg in ``var`` found by bounded trial division.

    Candidate coefficients range over F_q[T] of degree <= max_coeff_deg
    (default: the T-degree of f).  Only meant for small cases.
    """
    ring = f.ring
    ctx = ring.ctx
    if max_coeff_deg is None:
        max_coeff_deg = f.degree("T")
    lead = f.lead_coeff_in(var)
    if not (lead.is_constant() and lead.constant_code() == 1):
        raise InvalidInput("trial factorization expects a monic polynomial")
    polysT = [ring.from_univariate("T", [ring.const(ctx.elem(c)) for c in cs])
              for n in range(max_coeff_deg + 1)
              for cs in itertools.product(range(ctx.q), repeat=n + 1) if (n == 0 or cs[-1])]
    polysT = list(dict.fromkeys(polysT))
    X = ring.gen(var)
    found = []
    rest = f
    for d in range(1, max_deg + 1):
        if rest.degree(var) < d:
            break
        for coeffs in itertools.product(polysT, repeat=d):
            cand = X ** d
            for k, c in enumerate(coeffs):
                cand = cand + c * X ** k
            while rest.degree(var) >= d:
                try:
                    quo = rest.divexact(cand)
                except NotDivisible:
                    break
                found.append(cand)
                rest = quo
        if rest.degree(var) == 0:
            break
    if rest.degree(var) > 0:
        found.append(rest)
    return found
