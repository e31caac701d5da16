"""Orders in degree-r extensions of F_q(T): Smith forms over A = F_q[T],
Fitting norms, field norms, primitivity and the gamma(O, a) count.

Elements of A are dense coefficient lists (low -> high) of field codes.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .algebra_core import upoly
from .algebra_core.fields import FieldCtx
from .algebra_core.mpoly import MPoly, PolyRing
from .algebra_core.polyalg import resultant
from .algebra_core.ratfunc import RatFunc
from .errors import (IntegralityViolation, InvalidInput, NotAnIdeal, NotPrime,
                     TooLarge)

APoly = list  # dense list of codes


# -- helpers on A ------------------------------------------------------------

def a_from(ctx: FieldCtx, value) -> APoly:
    """Coerce an MPoly in T, a string, an int or a code list into a dense A-element."""
    if isinstance(value, MPoly):
        if "T" not in value.ring.vars:
            if not value.is_constant():
                raise InvalidInput("element of A must be a polynomial in T")
            return upoly.trim([value.constant_code()])
        if value.vars_used() - {value.ring.index("T")}:
            raise InvalidInput("element of A must be a polynomial in T alone")
        return upoly.trim(value.to_dense("T"))
    if isinstance(value, str):
        return a_from(ctx, PolyRing(ctx, ("T",)).parse(value))
    if isinstance(value, int):
        return upoly.trim([ctx.from_int(value)])
    if isinstance(value, (list, tuple)):
        return upoly.trim(list(value))
    raise InvalidInput(f"cannot interpret {value!r} as an element of A")


def a_to_mpoly(ctx: FieldCtx, a: APoly, ring: PolyRing | None = None) -> MPoly:
    ring = ring or PolyRing(ctx, ("T",))
    return ring.zero.from_dense("T", a)


def a_str(ctx: FieldCtx, a: APoly) -> str:
    return str(a_to_mpoly(ctx, a))


def _divides(ctx, d: APoly, x: APoly) -> bool:
    if not d:
        return not x
    return not upoly.rem(ctx, x, d)


def _identity(ctx, n: int) -> list[list[APoly]]:
    return [[[1] if i == j else [] for j in range(n)] for i in range(n)]


def mat_mul(ctx: FieldCtx, A, B):
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = [[[] for _ in range(k)] for _ in range(n)]
    for i in range(n):
        for j in range(k):
            acc: APoly = []
            for t in range(m):
                if A[i][t] and B[t][j]:
                    acc = upoly.add(ctx, acc, upoly.mul(ctx, A[i][t], B[t][j]))
            out[i][j] = acc
    return out


def a_det(ctx: FieldCtx, M) -> APoly:
    """Determinant over A by fraction-free elimination."""
    n = len(M)
    if n == 0:
        return [1]
    a = [[list(x) for x in row] for row in M]
    sign = 1
    prev: APoly = [1]
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = upoly.sub(ctx, upoly.mul(ctx, a[k][k], a[i][j]),
                                upoly.mul(ctx, a[i][k], a[k][j]))
                qq, rr = upoly.divmod_(ctx, num, prev)
                a[i][j] = qq
            a[i][k] = []
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return upoly.neg(ctx, d) if sign < 0 else d


# -- Smith and Hermite forms --------------------------------------------------

@dataclass
class SmithForm:
    U: list
    D: list
    V: list

    @property
    def invariants(self) -> list[APoly]:
        n = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(n)]

    def __iter__(self):
        return iter((self.U, self.D, self.V))


def smith_normal_form(M, ctx: FieldCtx) -> SmithForm:
    """U M V = D with D diagonal, d_i | d_{i+1}, each d_i monic or zero."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[upoly.trim(list(x)) for x in row] for row in M]
    U = _identity(ctx, m)
    V = _identity(ctx, n)

    def row_axpy(i, j, c):   # row_i -= c * row_j
        for R in (A, U):
            R[i] = [upoly.sub(ctx, x, upoly.mul(ctx, c, y)) for x, y in zip(R[i], R[j])]

    def col_axpy(i, j, c):   # col_i -= c * col_j
        for R in (A, V):
            for row in R:
                row[i] = upoly.sub(ctx, row[i], upoly.mul(ctx, c, row[j]))

    def swap_rows(i, j):
        for R in (A, U):
            R[i], R[j] = R[j], R[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or len(A[i][j]) < len(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    qq, rr = upoly.divmod_(ctx, A[i][t], piv)
                    row_axpy(i, t, qq)
                    clean &= not rr
            for j in range(t + 1, n):
                if A[t][j]:
                    qq, rr = upoly.divmod_(ctx, A[t][j], piv)
                    col_axpy(j, t, qq)
                    clean &= not rr
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] and not _divides(ctx, piv, A[i][j])), None)
            if bad is None:
                break
            row_axpy(t, bad[0], [ctx.neg(1)])   # row_t += row_i
        if A[t][t]:
            c = ctx.inv(A[t][t][-1])
            if c != 1:
                for R in (A, U):
                    R[t] = [upoly.scale(ctx, x, c) for x in R[t]]
    return SmithForm(U, A, V)


def hermite_rows(gens: list[list[APoly]], r: int, ctx: FieldCtx) -> list[list[APoly]]:
    """Upper-triangular basis (monic pivots, reduced above) of the A-span of ``gens``."""
    rows = [[upoly.trim(list(x)) for x in g] for g in gens]
    k = 0
    for c in range(r):
        while True:
            nz = [i for i in range(k, len(rows)) if rows[i][c]]
            if not nz:
                raise NotAnIdeal("generators do not span a full-rank lattice")
            i0 = min(nz, key=lambda i: len(rows[i][c]))
            rows[k], rows[i0] = rows[i0], rows[k]
            clean = True
            for i in range(k + 1, len(rows)):
                if rows[i][c]:
                    qq, rr = upoly.divmod_(ctx, rows[i][c], rows[k][c])
                    rows[i] = [upoly.sub(ctx, x, upoly.mul(ctx, qq, y))
                               for x, y in zip(rows[i], rows[k])]
                    clean &= not rr
            if clean:
                break
        inv = ctx.inv(rows[k][c][-1])
        rows[k] = [upoly.scale(ctx, x, inv) for x in rows[k]]
        for i in range(k):
            if rows[i][c]:
                qq, _ = upoly.divmod_(ctx, rows[i][c], rows[k][c])
                rows[i] = [upoly.sub(ctx, x, upoly.mul(ctx, qq, y))
                           for x, y in zip(rows[i], rows[k])]
        k += 1
    return rows[:r]


def reduce_mod_hermite(v: list[APoly], H: list[list[APoly]], ctx: FieldCtx) -> tuple:
    v = [list(x) for x in v]
    for i, h in enumerate(H):
        if v[i]:
            qq, _ = upoly.divmod_(ctx, v[i], h[i])
            if qq:
                v = [upoly.sub(ctx, x, upoly.mul(ctx, qq, y)) for x, y in zip(v, h)]
    return tuple(tuple(x) for x in v)


# -- orders ------------------------------------------------------------------

@dataclass
class OrderSpec:
    """O = A-span of w_i = (sum_l basis[i][l] y^l) / den inside F_q(T)[y]/(m)."""

    minpoly: MPoly
    basis: list[list[APoly]]
    den: APoly = field(default_factory=lambda: [1])
    imaginary: bool | None = None
    check_irreducible: bool = False

    def __post_init__(self):
        m = self.minpoly
        if "y" not in m.ring.vars or "T" not in m.ring.vars:
            raise InvalidInput("minimal polynomial must live in a ring with variables T and y")
        if m.vars_used() - {m.ring.index("T"), m.ring.index("y")}:
            raise InvalidInput("minimal polynomial may involve only T and y")
        lead = m.lead_coeff_in("y")
        if not (lead.is_constant() and lead.constant_code() == 1):
            raise InvalidInput("minimal polynomial must be monic in y")
        r = self.r
        ctx = self.ctx
        self.basis = [[upoly.trim(list(x)) for x in row] for row in self.basis]
        self.den = upoly.monic(ctx, upoly.trim(list(self.den)))
        if len(self.basis) != r or any(len(row) != r for row in self.basis):
            raise InvalidInput(f"basis must be an {r}x{r} matrix")
        if not self.den:
            raise InvalidInput("basis denominator must be nonzero")
        if not a_det(ctx, self.basis):
            raise InvalidInput("basis matrix is singular")
        if [list(x) for x in self.basis[0]] != [list(self.den)] + [[] for _ in range(r - 1)]:
            raise InvalidInput("first basis element must be 1")
        self._struct = self._structure_constants()
        if self.check_irreducible and linear_factor_in_A(self) is not None:
            raise InvalidInput("minimal polynomial has a root in A")

    @property
    def ctx(self) -> FieldCtx:
        return self.minpoly.ctx

    @property
    def r(self) -> int:
        return self.minpoly.degree("y")

    @property
    def ring(self) -> PolyRing:
        return self.minpoly.ring

    def element_poly(self, x: list[APoly]) -> MPoly:
        """den * u(y) in the power basis, as an MPoly in (T, y)."""
        ring = self.ring
        y = ring.gen("y")
        out = ring.zero
        for xi, row in zip(x, self.basis):
            if not xi:
                continue
            xm = a_to_mpoly(self.ctx, xi, ring)
            for l, b in enumerate(row):
                if b:
                    out = out + xm * a_to_mpoly(self.ctx, b, ring) * y ** l
        return out

    def _power_to_coords(self, pcoeffs: list[APoly], scale: APoly) -> list[APoly]:
        """Solve x * basis = pcoeffs * den / scale over A; raise if not integral."""
        ctx = self.ctx
        r = self.r
        B = self.basis
        det = a_det(ctx, B)
        out = []
        for i in range(r):
            Bi = [row[:] for row in B]
            Bi[i] = list(pcoeffs)
            num = upoly.mul(ctx, a_det(ctx, Bi), self.den)
            d = upoly.mul(ctx, det, scale)
            qq, rr = upoly.divmod_(ctx, num, d)
            if rr:
                raise InvalidInput("element does not lie in the order")
            out.append(qq)
        return out

    def _structure_constants(self):
        ctx = self.ctx
        r = self.r
        from .algebra_core.polyalg import reduce_mod_monic
        polys = [self.element_poly([[1] if j == i else [] for j in range(r)]) for i in range(r)]
        den2 = upoly.mul(ctx, self.den, self.den)
        C = {}
        for i in range(r):
            for j in range(i, r):
                prod = reduce_mod_monic(polys[i] * polys[j], self.minpoly, "y")
                cl = prod.coeffs_in("y")
                pc = [a_from(ctx, cl[l]) if l in cl else [] for l in range(r)]
                try:
                    C[i, j] = C[j, i] = self._power_to_coords(pc, den2)
                except InvalidInput:
                    raise InvalidInput("basis is not closed under multiplication") from None
        return C

    def mul(self, x: list[APoly], z: list[APoly]) -> list[APoly]:
        ctx = self.ctx
        out: list[APoly] = [[] for _ in range(self.r)]
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, zj in enumerate(z):
                if not zj:
                    continue
                c = upoly.mul(ctx, xi, zj)
                for k, s in enumerate(self._struct[i, j]):
                    if s:
                        out[k] = upoly.add(ctx, out[k], upoly.mul(ctx, c, s))
        return out

    def change_basis(self, U: list[list[APoly]]) -> "OrderSpec":
        """Order with basis rows U * basis (U unimodular with first row e_1)."""
        newB = mat_mul(self.ctx, U, self.basis)
        return OrderSpec(self.minpoly, newB, self.den, self.imaginary)

    def coords_from_power(self, pcoeffs: list[APoly]) -> list[APoly]:
        """A-coordinates of the element sum pcoeffs[l] y^l."""
        return self._power_to_coords(pcoeffs, [1])


def order_from_minpoly(minpoly: MPoly, imaginary: bool | None = None) -> OrderSpec:
    """The equation order A[y] with its power basis."""
    r = minpoly.degree("y")
    return OrderSpec(minpoly, [[[1] if i == j else [] for j in range(r)] for i in range(r)],
                     [1], imaginary)


def minimal_order(maximal: OrderSpec, conductor) -> OrderSpec:
    """A + f O_K from an O_K basis starting with 1."""
    ctx = maximal.ctx
    f = a_from(ctx, conductor)
    if not f:
        raise InvalidInput("conductor must be nonzero")
    B = [maximal.basis[0]] + [[upoly.mul(ctx, f, x) for x in row] for row in maximal.basis[1:]]
    return OrderSpec(maximal.minpoly, B, maximal.den, maximal.imaginary)


def imaginary_heuristic(minpoly: MPoly) -> bool | None:
    """True when infinity is certified totally ramified by a single Newton slope; else None."""
    r = minpoly.degree("y")
    cl = minpoly.coeffs_in("y")
    if 0 not in cl:
        return None
    s = cl[0].degree("T")
    if s <= 0 or gcd(s, r) != 1:
        return None
    for i in range(1, r):
        if i in cl and cl[i].degree("T") * r > s * (r - i):
            return None
    return True


def linear_factor_in_A(spec: OrderSpec) -> APoly | None:
    """A root of the minimal polynomial in A, if any (bounded by the Newton polygon)."""
    ctx = spec.ctx
    m = spec.minpoly
    r = spec.r
    cl = m.coeffs_in("y")
    bound = 0
    for i in range(r):
        if i in cl and not cl[i].is_zero():
            bound = max(bound, -(-cl[i].degree("T") // (r - i)))
    if ctx.q ** (bound + 1) > 200000:
        raise TooLarge("root search space too large")
    for cs in itertools.product(range(ctx.q), repeat=bound + 1):
        c = upoly.trim(list(cs))
        val = m.subs("y", a_to_mpoly(ctx, c, m.ring))
        if val.is_zero():
            return c
    return None


# -- ideals and norms ----------------------------------------------------------

@dataclass
class IdealPresentation:
    """Columns of ``matrix`` are A-generators of the ideal, in order coordinates."""

    spec: OrderSpec
    matrix: list[list[APoly]]

    @property
    def columns(self) -> list[list[APoly]]:
        r = self.spec.r
        return [[self.matrix[i][j] for i in range(r)] for j in range(len(self.matrix[0]))]

    def hermite(self) -> list[list[APoly]]:
        return hermite_rows(self.columns, self.spec.r, self.spec.ctx)

    def is_ideal(self) -> bool:
        H = self.hermite()
        zero = tuple(() for _ in range(self.spec.r))
        for g in self.columns:
            for i in range(self.spec.r):
                e = [[1] if j == i else [] for j in range(self.spec.r)]
                if reduce_mod_hermite(self.spec.mul(g, e), H, self.spec.ctx) != zero:
                    return False
        return True


def ideal_from_generators(spec: OrderSpec, gens: list[list[APoly]]) -> IdealPresentation:
    """O-ideal generated by elements given in order coordinates."""
    r = spec.r
    cols = []
    for g in gens:
        for i in range(r):
            e = [[1] if j == i else [] for j in range(r)]
            cols.append(spec.mul([upoly.trim(list(x)) for x in g], e))
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(r)]
    return IdealPresentation(spec, matrix)


def ideal_product(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    spec = I.spec
    prods = [spec.mul(a, b) for a in I.columns for b in J.columns]
    matrix = [[p[i] for p in prods] for i in range(spec.r)]
    return IdealPresentation(spec, matrix)


def fitting_norm(ideal: IdealPresentation) -> APoly:
    """Monic product of the invariant factors of O / ideal."""
    ctx = ideal.spec.ctx
    D = smith_normal_form(ideal.matrix, ctx).invariants
    if len(D) < ideal.spec.r or any(not d for d in D):
        raise NotAnIdeal("presentation is rank deficient")
    out: APoly = [1]
    for d in D:
        out = upoly.mul(ctx, out, d)
    return upoly.monic(ctx, out)


def coset_count(ideal: IdealPresentation, limit: int = 10 ** 6) -> int:
    """|O / ideal| by explicit enumeration of canonical residues.

    Generators c T^j e_i (c in an F_p-basis of F_q, j <= max pivot degree) are
    reduced once; reduction mod the Hermite basis is F_p-linear, so the residue
    set is grown as the F_p-span of the reduced generators, one at a time.
    """
    spec = ideal.spec
    ctx = spec.ctx
    r = spec.r
    H = ideal.hermite()
    width = max(len(H[i][i]) - 1 for i in range(r)) + 1
    basis_fp = [ctx.from_coeffs([1 if k == i else 0 for k in range(ctx.e)]) for i in range(ctx.e)]

    def flat(v) -> tuple:
        out = [0] * (r * width)
        for i, x in enumerate(v):
            for j, c in enumerate(x):
                out[i * width + j] = c
        return tuple(out)

    add = ctx.add
    seen = {tuple([0] * (r * width))}
    for i in range(r):
        for j in range(width):
            for c in basis_fp:
                v = [[] for _ in range(r)]
                v[i] = [0] * j + [c]
                s = flat(reduce_mod_hermite(v, H, ctx))
                if s in seen:
                    continue
                grown = set(seen)
                cur = s
                for _ in range(ctx.p - 1):
                    grown.update(tuple(add(a, b) for a, b in zip(x, cur)) for x in seen)
                    cur = tuple(add(a, b) for a, b in zip(cur, s))
                if len(grown) > limit:
                    raise TooLarge("coset enumeration exceeded its limit")
                seen = grown
    return len(seen)


def norm_element(spec: OrderSpec, u: list) -> APoly:
    """Nm_{K/F}(u) = Res_y(m, u(y)) for u given by A-coordinates."""
    ctx = spec.ctx
    x = [a_from(ctx, c) for c in u]
    if not any(x):
        raise InvalidInput("norm of zero")
    up = spec.element_poly(x)
    res = a_from(ctx, resultant(spec.minpoly, up, "y").change_ring(PolyRing(ctx, ("T",))))
    dr = upoly.power(ctx, spec.den, spec.r)
    qq, rr = upoly.divmod_(ctx, res, dr)
    if rr:
        raise IntegralityViolation("norm of an order element is not in A")
    return qq


def is_primitive(u: list, ctx: FieldCtx) -> bool:
    x = [a_from(ctx, c) for c in u]
    if not any(x):
        raise InvalidInput("primitivity of zero")
    g: APoly = []
    for c in x:
        g = upoly.gcd(ctx, g, c) if g else upoly.monic(ctx, c)
    return len(g) == 1


def is_irreducible_A(ctx: FieldCtx, a: APoly) -> bool:
    return upoly.is_irreducible(ctx, a)


@dataclass
class GammaResult:
    count: int
    witnesses: list
    bound: int
    exact: bool

    @property
    def tag(self) -> str:
        return "exact" if self.exact else "lower bound"


def gamma_count(spec: OrderSpec, a, bound: int | None = None, certified: bool = False,
                limit: int = 2_000_000) -> GammaResult:
    """Count F_q^*-orbits of primitive u in O with Nm(u) = c*a, coordinates of degree <= bound."""
    ctx = spec.ctx
    a = a_from(ctx, a)
    if len(a) < 2 or a[-1] != 1:
        raise InvalidInput("a must be monic of positive degree")
    if not is_irreducible_A(ctx, a):
        raise NotPrime(f"{a_str(ctx, a)} is not irreducible")
    B = len(a) - 1 if bound is None else bound
    if B < len(a) - 1:
        raise InvalidInput("bound must be at least deg a")
    r = spec.r
    polys = [upoly.trim(list(cs)) for cs in itertools.product(range(ctx.q), repeat=B + 1)]
    polys.sort(key=lambda p: (len(p), p[::-1]))
    if len(polys) ** r > limit:
        raise TooLarge(f"enumeration of {len(polys) ** r} elements exceeds the limit")
    witnesses = []
    for x in itertools.product(polys, repeat=r):
        first = next((c for c in x if c), None)
        if first is None or first[-1] != 1:
            continue
        if not is_primitive(list(x), ctx):
            continue
        nm = norm_element(spec, list(x))
        if len(nm) != len(a):
            continue
        c = ctx.mul(nm[-1], 1)
        if upoly.scale(ctx, a, c) == nm:
            witnesses.append([list(c_) for c_ in x])
    return GammaResult(len(witnesses), witnesses, B, certified)


# -- Hilbert consistency ----------------------------------------------------------

@dataclass
class HilbertReport:
    degree: int
    integral: bool
    degree_sum: int | None
    degree_check: bool | None


def hilbert_consistency(phi_poly, orders: list | None = None, var: str = "X") -> HilbertReport:
    """Integrality and degree accounting for Phi = prod H_{O,J}^gamma(O,a).

    ``orders`` is an optional list of (label, gamma, deg H) triples.
    """
    if isinstance(phi_poly, RatFunc):
        if not phi_poly.den.is_constant():
            raise IntegralityViolation(f"coefficient denominators {phi_poly.den} lie outside A")
        num = phi_poly.num.scale(phi_poly.num.ctx.inv(phi_poly.den.lc()))
    else:
        num = phi_poly
    lead = num.lead_coeff_in(var)
    if not (lead.is_constant() and lead.constant_code() == 1):
        raise InvalidInput("Phi must be monic in X")
    deg = num.degree(var)
    if not orders:
        return HilbertReport(deg, True, None, None)
    total = sum(g * d for _, g, d in orders)
    return HilbertReport(deg, True, total, total == deg)
