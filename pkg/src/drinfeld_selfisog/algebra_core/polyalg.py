"""GCD, pseudo-division, resultants, squarefree parts and determinants.

Everything works on :class:`MPoly` and treats one distinguished variable as the
main variable, with the remaining variables forming the coefficient domain.
"""
from __future__ import annotations

from . import upoly
from ..errors import (DivisionByZero, InseparableInput, InvalidInput,
                     NonInvertibleDenominator, UndefinedGcd)
from .mpoly import MPoly, PolyRing


# -- gcd -----------------------------------------------------------------

def mgcd(f: MPoly, g: MPoly) -> MPoly:
    """Full multivariate gcd, normalized to graded-lex leading coefficient 1."""
    if f.ring != g.ring:
        from ..errors import ContextMismatch
        raise ContextMismatch("gcd of polynomials from different rings")
    if f.is_zero() and g.is_zero():
        raise UndefinedGcd("gcd(0, 0) is undefined")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.ring.one
    fv, gv = f.vars_used(), g.vars_used()
    both = fv & gv
    if len(fv | gv) == 1:
        (i,) = fv | gv
        ctx = f.ctx
        d = upoly.gcd(ctx, f.to_dense(i), g.to_dense(i))
        return f.from_dense(i, d)
    if both:
        v = min(both, key=lambda i: max(f.degree(i), g.degree(i)))
    else:
        v = min(fv | gv)
    cf, pf = content_pp(f, v)
    cg, pg = content_pp(g, v)
    c = mgcd(cf, cg)
    if pf.degree(v) <= 0 or pg.degree(v) <= 0:
        return c
    return (c * _prs_gcd(pf, pg, v)).monic()


def content(f: MPoly, v) -> MPoly:
    """gcd of the coefficients of f viewed as a polynomial in v."""
    coeffs = sorted(f.coeffs_in(v).values(), key=lambda c: len(c.terms))
    c = f.ring.zero
    for k in coeffs:
        c = mgcd(c, k) if not c.is_zero() else k.monic()
        if c.is_constant():
            return f.ring.one
    return c


def content_pp(f: MPoly, v) -> tuple[MPoly, MPoly]:
    if f.is_zero():
        return f.ring.zero, f.ring.zero
    c = content(f, v)
    return c, (f if c.is_constant() and c.lc() == 1 else f.divexact(c))


def primitive_part(f: MPoly, v) -> MPoly:
    return content_pp(f, v)[1]


def _prs_gcd(a: MPoly, b: MPoly, v) -> MPoly:
    """gcd of two primitive polynomials in v by the primitive PRS."""
    if a.degree(v) < b.degree(v):
        a, b = b, a
    while True:
        r = prem(a, b, v, exact=False)
        if r.is_zero():
            return b
        if r.degree(v) == 0:
            return a.ring.one
        a, b = b, primitive_part(r, v)


def normalize_in(f: MPoly, v) -> MPoly:
    """Scale so that the leading coefficient in v has graded-lex lc 1."""
    if f.is_zero():
        return f
    return f.scale(f.ctx.inv(f.lead_coeff_in(v).lc()))


def poly_gcd(f: MPoly, g: MPoly, main_var) -> MPoly:
    """gcd over the fraction field of the other variables.

    Returned as a primitive polynomial whose leading coefficient in
    ``main_var`` is normalized (it equals 1 whenever the gcd is monic).
    """
    if f.is_zero() and g.is_zero():
        raise UndefinedGcd("gcd(0, 0) is undefined")
    v = f.ring.index(main_var)
    if g.is_zero():
        return normalize_in(primitive_part(f, v), v) if f.degree(v) > 0 else f.ring.one
    if f.is_zero():
        return poly_gcd(g, f, main_var)
    h = mgcd(f, g)
    if h.degree(v) <= 0:
        return f.ring.one
    return normalize_in(primitive_part(h, v), v)


# -- pseudo-division and resultants ---------------------------------------

def prem(a: MPoly, b: MPoly, v, exact: bool = True) -> MPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b in the variable v.

    With ``exact=False`` the trailing power of lc(b) is omitted; the result
    then differs from the true pseudo-remainder by a factor lc(b)^k.
    """
    if b.is_zero():
        raise DivisionByZero("pseudo-division by zero")
    ring = a.ring
    v = ring.index(v)
    db = b.degree(v)
    da = a.degree(v)
    if da < db:
        return a
    lb = b.lead_coeff_in(v)
    bred = b - lb.mul_monomial(ring.var_monomial(v, db))
    r = a
    steps = 0
    while not r.is_zero() and (d := r.degree(v)) >= db:
        lr = r.lead_coeff_in(v)
        rtail = r - lr.mul_monomial(ring.var_monomial(v, d))
        shift = ring.var_monomial(v, d - db) if d > db else 0
        r = lb * rtail - (lr * bred).mul_monomial(shift)
        steps += 1
    if exact:
        extra = da - db + 1 - steps
        if extra:
            r = r * lb ** extra
    return r


def resultant(f: MPoly, g: MPoly, elim_var) -> MPoly:
    """Res_v(f, g) by the subresultant algorithm (Cohen, Alg. 3.3.7)."""
    if f.is_zero():
        raise InvalidInput("resultant with a zero first argument")
    ring = f.ring
    v = ring.index(elim_var)
    if g.is_zero():
        return ring.zero
    da, db = f.degree(v), g.degree(v)
    if db == 0:
        return g ** da
    if da == 0:
        return f ** db
    a_c, A = content_pp(f, v)
    b_c, B = content_pp(g, v)
    t = a_c ** db * b_c ** da
    s = 1
    if da < db:
        A, B = B, A
        if da % 2 and db % 2:
            s = -s
    g_, h = ring.one, ring.one
    while True:
        dA, dB = A.degree(v), B.degree(v)
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = prem(A, B, v)
        A = B
        B = R.divexact(g_ * h ** delta) if not R.is_zero() else R
        g_ = A.lead_coeff_in(v)
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = (g_ ** delta).divexact(h ** (delta - 1))
        if B.is_zero():
            return ring.zero
        if B.degree(v) == 0:
            break
    dA = A.degree(v)
    lB = B
    if dA == 0:
        h = ring.one
    elif dA == 1:
        h = lB
    else:
        h = (lB ** dA).divexact(h ** (dA - 1))
    out = t * h
    return -out if s < 0 else out


# -- squarefree machinery ------------------------------------------------

def pth_root(f: MPoly) -> MPoly:
    """Return u with u^p = f, or raise InseparableInput when none exists."""
    ring = f.ring
    ctx = f.ctx
    p = ctx.p
    out: dict[int, int] = {}
    e_exp = ctx.q // p
    for m, c in f.terms.items():
        exps = ring.unpack(m)
        if any(e % p for e in exps):
            raise InseparableInput(
                f"inseparable factor: coefficients are not p-th powers ({f})")
        out[ring.pack([e // p for e in exps])] = ctx.pow(c, e_exp) if ctx.e > 1 else c
    return MPoly(ring, out)


def squarefree_part(f: MPoly, main_var) -> MPoly:
    """Product of the distinct irreducible factors of f over F_q(others)[v].

    Characteristic p is handled by extracting p-th roots; a factor whose
    radical would need inseparable coefficients raises InseparableInput.
    """
    if f.is_zero():
        raise InvalidInput("squarefree part of zero")
    v = f.ring.index(main_var)
    f = primitive_part(f, v)
    if f.degree(v) <= 0:
        return f.ring.one
    return normalize_in(_sqf(f, v), v)


def _sqf(f: MPoly, v: int) -> MPoly:
    d = f.diff(v)
    if d.is_zero():
        return _sqf(primitive_part(pth_root(f), v), v)
    g = poly_gcd(f, d, v)
    sep = primitive_part(f.divexact(g), v)
    w = g
    while w.degree(v) > 0:
        h = poly_gcd(w, sep, v)
        if h.degree(v) <= 0:
            break
        w = w.divexact(h)
    w = primitive_part(w, v)
    if w.degree(v) > 0:
        return sep * _sqf(primitive_part(pth_root(w), v), v)
    return sep


def squarefree_decomposition(f: MPoly, main_var) -> dict[int, MPoly]:
    """Map multiplicity -> product of the irreducible factors with that multiplicity."""
    v = f.ring.index(main_var)
    rest = primitive_part(f, v)
    layers = []
    while rest.degree(v) > 0:
        s = squarefree_part(rest, v)
        layers.append(s)
        rest = primitive_part(rest.divexact(s), v)
    out = {}
    for k, s in enumerate(layers):
        nxt = layers[k + 1] if k + 1 < len(layers) else f.ring.one
        part = s.divexact(nxt)
        if part.degree(v) > 0:
            out[k + 1] = normalize_in(part, v)
    return out


def is_squarefree(f: MPoly, main_var) -> bool:
    v = f.ring.index(main_var)
    return squarefree_part(f, v).degree(v) == primitive_part(f, v).degree(v)


# -- linear algebra over polynomial rings ----------------------------------

def bareiss_det(matrix: list[list[MPoly]], ring: PolyRing) -> MPoly:
    """Fraction-free determinant of a square matrix with MPoly entries."""
    n = len(matrix)
    if n == 0:
        return ring.one
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise InvalidInput("determinant of a non-square matrix")
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = akk * a[i][j] - aik * a[k][j]
                a[i][j] = num.divexact(prev) if not num.is_zero() else num
            a[i][k] = ring.zero
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def mult_matrix(num: MPoly, modulus: MPoly, v) -> list[list[MPoly]]:
    """Matrix (columns = images of 1, y, ..., y^(n-1)) of multiplication by num mod a monic modulus."""
    ring = num.ring
    v = ring.index(v)
    n = modulus.degree(v)
    cols = []
    cur = reduce_mod_monic(num, modulus, v)
    y = ring.gen(v)
    for _ in range(n):
        cl = cur.coeffs_in(v)
        cols.append([cl.get(i, ring.zero) for i in range(n)])
        cur = reduce_mod_monic(cur * y, modulus, v)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def reduce_mod_monic(f: MPoly, h: MPoly, v) -> MPoly:
    """Remainder of f modulo h, where h is monic in v (no pseudo-factor needed)."""
    ring = f.ring
    v = ring.index(v)
    n = h.degree(v)
    lead = h.lead_coeff_in(v)
    if not (lead.is_constant() and lead.constant_code() == 1):
        raise InvalidInput("modulus must be monic in the main variable")
    tail = h - ring.gen(v) ** n
    if f.degree(v) < n:
        return f
    parts = f.coeffs_in(v)
    while parts and max(parts) >= n:
        d = max(parts)
        c = parts.pop(d)
        shift = ring.var_monomial(v, d - n) if d > n else 0
        for k, t in (-(c * tail)).mul_monomial(shift).coeffs_in(v).items():
            s = parts.get(k)
            s = t if s is None else s + t
            if s.is_zero():
                parts.pop(k, None)
            else:
                parts[k] = s
    return ring.from_univariate(v, parts)


def charpoly_mult(modulus: MPoly, u, main_var="y", out_var="X"):
    """Characteristic polynomial of multiplication by u on F_q(T)[y]/(modulus).

    ``u`` is a RatFunc (or MPoly) in the ring of ``modulus``.  The result is a
    RatFunc in a ring extended by ``out_var``; it is monic in ``out_var``.
    """
    from .ratfunc import RatFunc

    ring = modulus.ring
    if isinstance(u, MPoly):
        u = RatFunc(u, ring.one)
    if u.ring != ring:
        from ..errors import ContextMismatch
        raise ContextMismatch("u and modulus live in different rings")
    v = ring.index(main_var)
    if poly_gcd(u.den, modulus, v).degree(v) > 0:
        raise NonInvertibleDenominator("denominator shares a factor with the modulus")
    big = ring.extend(out_var)
    X = big.gen(out_var)
    h = modulus.change_ring(big)
    mn = mult_matrix(u.num.change_ring(big), h, v)
    md = mult_matrix(u.den.change_ring(big), h, v)
    n = len(mn)
    m = [[X * md[i][j] - mn[i][j] for j in range(n)] for i in range(n)]
    top = bareiss_det(m, big)
    bottom = bareiss_det(md, big)
    if bottom.is_zero():
        raise NonInvertibleDenominator("denominator is a zero divisor modulo the modulus")
    return RatFunc(top, bottom)
