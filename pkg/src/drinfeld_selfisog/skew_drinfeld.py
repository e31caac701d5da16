"""Twisted q-polynomials, Drinfeld modules, isogeny duals and commutation systems.

A :class:`SkewPoly` holds coefficients c_0..c_n of sum c_i x^(q^i) in any
coefficient ring that provides ``+ - *``, ``==``, ``is_zero()``,
``frobenius(k)`` (the q^k-th power), optionally ``inverse()``, and a
``parent`` exposing ``zero``, ``one``, ``q``, ``const(c)`` and ``T``.

:class:`FormalRing` is such a ring with a *symbolic* q: exponents are
polynomials in q, so generated systems can be read for every q at once.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra_core.fields import FieldCtx, FqElem
from .algebra_core.mpoly import MPoly, PolyRing
from .errors import (AlgebraError, ContextMismatch, DegenerateDenominator,
                     DivisionByZero, InvalidInput, NotAnIsogeny, NotDivisible)


# -- formal coefficients with symbolic q -----------------------------------

def _qexp_add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


def _qexp_str(e: tuple) -> str:
    parts = []
    for i in range(len(e) - 1, -1, -1):
        c = e[i]
        if not c:
            continue
        base = "1" if i == 0 else ("q" if i == 1 else f"q^{i}")
        if i == 0:
            parts.append(str(c))
        else:
            parts.append(base if c == 1 else f"{c}*{base}")
    return "+".join(parts)


def _qexp_value(e: tuple, q: int) -> int:
    return sum(c * q ** i for i, c in enumerate(e))


@dataclass(frozen=True)
class FormalRing:
    """Z[v_1, ..., v_n] with exponents in N[q] and Frobenius acting by exponent * q."""

    vars: tuple[str, ...]
    base: str = "T"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise InvalidInput("duplicate formal variable names")

    q = None  # symbolic

    @property
    def zero(self) -> "Formal":
        return Formal(self, {})

    @property
    def one(self) -> "Formal":
        return Formal(self, {self._unit: 1})

    @property
    def _unit(self) -> tuple:
        return ((),) * len(self.vars)

    @property
    def T(self) -> "Formal":
        return self.gen(self.base)

    def const(self, c) -> "Formal":
        if isinstance(c, FqElem):
            if c.ctx.e != 1:
                raise InvalidInput("formal ring only holds integer constants")
            c = c.v
        if not isinstance(c, int):
            raise InvalidInput(f"cannot use {c!r} as a formal constant")
        return Formal(self, {self._unit: c} if c else {})

    def gen(self, name: str) -> "Formal":
        try:
            i = self.vars.index(name)
        except ValueError:
            raise InvalidInput(f"{name!r} is not a formal variable") from None
        mono = tuple((1,) if j == i else () for j in range(len(self.vars)))
        return Formal(self, {mono: 1})

    def parse(self, text: str) -> "Formal":
        return _FormalParser(self, text).parse()


class Formal:
    __slots__ = ("parent", "terms")

    def __init__(self, parent: FormalRing, terms: dict):
        self.parent = parent
        self.terms = {m: c for m, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, Formal):
            if other.parent != self.parent:
                raise ContextMismatch("formal expressions over different variable sets")
            return other
        if isinstance(other, int):
            return self.parent.const(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return Formal(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return Formal(self.parent, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                m = tuple(_qexp_add(x, y) for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        return Formal(self.parent, out)

    __rmul__ = __mul__

    def frobenius(self, k: int = 1) -> "Formal":
        if k == 0:
            return self
        shift = (0,) * k
        return Formal(self.parent, {tuple(shift + e if e else e for e in m): c
                                    for m, c in self.terms.items()})

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (Formal, int)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def specialize(self, ring: PolyRing, rename: dict | None = None) -> MPoly:
        """Evaluate q = ring.q and reduce coefficients into F_q."""
        rename = rename or {}
        q = ring.ctx.q
        out = ring.zero
        for m, c in self.terms.items():
            exps = [0] * ring.n
            for name, e in zip(self.parent.vars, m):
                if e:
                    exps[ring.index(rename.get(name, name))] += _qexp_value(e, q)
            out = out + ring.monomial(exps, c)
        return out

    def sorted_terms(self):
        def key(item):
            m, _ = item
            return tuple(tuple(reversed(e)) for e in m)
        return sorted(self.terms.items(), key=key, reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.parent.vars, m):
                if not e:
                    continue
                if e == (1,):
                    factors.append(name)
                else:
                    s = _qexp_str(e)
                    factors.append(f"{name}^{s}" if re.fullmatch(r"\d+|q", s) else f"{name}^({s})")
            mon = "*".join(factors)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mon if (a == 1 and mon) else (f"{a}*{mon}" if mon else str(a))
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__


_FTOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^(){}]))")


class _FormalParser:
    """Parses expressions such as ``h1*Delta^(q^2) + Delta*h2^(q^3)``."""

    def __init__(self, ring: FormalRing, text: str):
        self.ring = ring
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _FTOK.match(text, pos)
            if not m or m.end() == pos:
                raise InvalidInput(f"cannot parse {text!r} at {pos}")
            tok = m.group(1) or m.group(2) or m.group(3)
            self.toks.append({"{": "(", "}": ")"}.get(tok, tok))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Formal:
        out = self.expr()
        if self.peek() is not None:
            raise InvalidInput(f"unexpected token {self.peek()!r}")
        return out

    def expr(self) -> Formal:
        neg = False
        while self.peek() in ("+", "-"):
            neg ^= self.take() == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Formal:
        acc = self.factor()
        while True:
            t = self.peek()
            if t == "*":
                self.take()
                acc = acc * self.factor()
            elif t is not None and t not in "+-)^":
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Formal:
        tok = self.take()
        if tok == "(":
            base = self.expr()
            if self.take() != ")":
                raise InvalidInput("unbalanced parentheses")
        elif tok is not None and tok.isdigit():
            base = self.ring.const(int(tok))
        elif tok is not None and tok in self.ring.vars:
            base = self.ring.gen(tok)
        else:
            raise InvalidInput(f"unexpected token {tok!r}")
        if self.peek() == "^":
            self.take()
            e = self.qexp_atom()
            if len(base.terms) != 1:
                if any(e[1:]) or not e:
                    raise InvalidInput("symbolic power of a sum is not supported")
                out = self.ring.one
                for _ in range(e[0]):
                    out = out * base
                return out
            (m, c), = base.terms.items()
            if c not in (1,) and any(e[1:]):
                raise InvalidInput("symbolic power of a non-unit constant")
            new = tuple(_qexp_mul(x, e) for x in m)
            return Formal(self.ring, {new: c ** (e[0] if len(e) == 1 else 1)})
        return base

    def qexp_atom(self) -> tuple:
        tok = self.take()
        if tok == "(":
            e = self.qexp_sum()
            if self.take() != ")":
                raise InvalidInput("unbalanced exponent parentheses")
            return e
        if tok is not None and tok.isdigit():
            return (int(tok),)
        if tok == "q":
            if self.peek() == "^" and self.i + 1 < len(self.toks) and self.toks[self.i + 1].isdigit():
                self.take()
                k = int(self.take())
                return (0,) * k + (1,)
            return (0, 1)
        raise InvalidInput(f"bad exponent token {tok!r}")

    def qexp_sum(self) -> tuple:
        acc = self.qexp_term()
        while self.peek() == "+":
            self.take()
            acc = _qexp_add(acc, self.qexp_term())
        return acc

    def qexp_term(self) -> tuple:
        coef = 1
        if self.peek() is not None and self.peek().isdigit():
            coef = int(self.take())
            if self.peek() == "*":
                self.take()
            elif self.peek() != "q":
                return (coef,)
        e = self.qexp_atom()
        return tuple(coef * x for x in e)


def _qexp_mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


# -- skew polynomials -------------------------------------------------------

def _parent_of(c):
    return c.parent if not isinstance(c, FqElem) else c.ctx


class SkewPoly:
    """sum c_i x^(q^i) with composition as multiplication."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, coeffs, parent=None):
        coeffs = list(coeffs)
        if parent is None:
            if not coeffs:
                raise InvalidInput("parent required for the zero skew polynomial")
            parent = _parent_of(coeffs[0])
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.parent = parent
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls, parent) -> "SkewPoly":
        return cls([parent.one], parent)

    @classmethod
    def monomial(cls, c, k: int, parent=None) -> "SkewPoly":
        parent = parent or _parent_of(c)
        return cls([parent.zero] * k + [c], parent)

    @property
    def degree(self) -> int:
        """tau-degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.parent.zero

    def lc(self):
        return self.coeffs[-1]

    def _check(self, other: "SkewPoly"):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        if other.parent != self.parent:
            raise ContextMismatch("skew polynomials over different coefficient rings")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return SkewPoly([self.coeff(i) + o.coeff(i) for i in range(n)], self.parent)

    def __neg__(self):
        return SkewPoly([-c for c in self.coeffs], self.parent)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        if isinstance(other, SkewPoly):
            return skew_mul(self, other)
        return NotImplemented

    def scale(self, c) -> "SkewPoly":
        """Left multiplication by the constant map c*x."""
        return SkewPoly([c * a for a in self.coeffs], self.parent)

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.parent == other.parent and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def map_coeffs(self, fn, parent=None) -> "SkewPoly":
        coeffs = [fn(c) for c in self.coeffs]
        return SkewPoly(coeffs, parent or (_parent_of(coeffs[0]) if coeffs else self.parent))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mon = "x" if i == 0 else f"x^(q^{i})" if i > 1 else "x^q"
            parts.append(f"({c})*{mon}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SkewPoly({self})"


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Composition f o g: coefficient k is sum_{i+j=k} f_i * g_j^(q^i)."""
    if f.parent != g.parent:
        raise ContextMismatch("skew polynomials over different coefficient rings")
    if f.is_zero() or g.is_zero():
        return SkewPoly([], f.parent)
    out = [f.parent.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if fi.is_zero():
            continue
        for j, gj in enumerate(g.coeffs):
            if gj.is_zero():
                continue
            out[i + j] = out[i + j] + fi * gj.frobenius(i)
    return SkewPoly(out, f.parent)


def skew_right_divide(f: SkewPoly, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """Return (quot, rem) with f = quot o g + rem and deg rem < deg g."""
    if g.is_zero():
        raise DivisionByZero("right division by the zero skew polynomial")
    if f.parent != g.parent:
        raise ContextMismatch("skew polynomials over different coefficient rings")
    parent = f.parent
    d = g.degree
    lead = g.lc()
    quot = [parent.zero] * max(f.degree - d + 1, 0)
    r = f
    while r.degree >= d:
        s = r.degree - d
        try:
            t = r.lc() * lead.frobenius(s).inverse()
        except (AlgebraError, ZeroDivisionError) as exc:
            raise NotDivisible(f"leading coefficient not invertible at step {s}") from exc
        quot[s] = t
        r = r - skew_mul(SkewPoly.monomial(t, s, parent), g)
        if r.degree >= d + s:
            raise NotDivisible("coefficient ring arithmetic failed to cancel the leading term")
    return SkewPoly(quot, parent), r


# -- Drinfeld modules ---------------------------------------------------------

class DrinfeldModule:
    """phi_T = T x + g_1 x^q + ... + g_r x^(q^r) over a coefficient ring."""

    def __init__(self, coeffs, parent=None, constant=None):
        coeffs = list(coeffs)
        if len(coeffs) < 2:
            raise InvalidInput("a Drinfeld module needs rank r >= 2")
        if parent is None:
            parent = _parent_of(coeffs[0])
        if coeffs[-1].is_zero():
            raise InvalidInput("top coefficient g_r must be nonzero")
        self.parent = parent
        self.coeffs = tuple(coeffs)
        self.constant = constant if constant is not None else parent.T
        self.phi_T = SkewPoly([self.constant, *coeffs], parent)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def delta(self):
        return self.coeffs[-1]

    def image(self, a) -> SkewPoly:
        return drinfeld_image(self, a)

    def __repr__(self):
        return f"DrinfeldModule(rank={self.rank}, phi_T={self.phi_T})"


def _a_coeffs(a, parent) -> list:
    """Coefficient list (low -> high) of a in A, as elements of ``parent``."""
    if isinstance(a, MPoly):
        if a.vars_used() - {a.ring.index("T")} if "T" in a.ring.vars else a.vars_used():
            raise InvalidInput("a must be a polynomial in T alone")
        cs = a.to_dense("T") if "T" in a.ring.vars else [a.constant_code()]
        ctx = a.ctx
        return [parent.const(ctx.elem(c)) for c in cs]
    if isinstance(a, (list, tuple)):
        return [parent.const(c) for c in a]
    if isinstance(a, (int, FqElem)):
        return [parent.const(a)]
    raise InvalidInput(f"cannot interpret {a!r} as an element of F_q[T]")


def drinfeld_image(phi: DrinfeldModule, a) -> SkewPoly:
    """phi_a by Horner's rule on the T-expansion of a."""
    cs = _a_coeffs(a, phi.parent)
    while cs and cs[-1].is_zero():
        cs.pop()
    if not cs:
        raise InvalidInput("phi_a is undefined for a = 0")
    parent = phi.parent
    acc = SkewPoly([cs[-1]], parent)
    for c in reversed(cs[:-1]):
        acc = skew_mul(phi.phi_T, acc) + SkewPoly([c], parent)
    return acc


def dual_isogeny(phi: DrinfeldModule, u: SkewPoly, a) -> SkewPoly:
    """Return u_hat with u o u_hat = u_hat o u = phi_a (both identities verified)."""
    if u.is_zero():
        raise InvalidInput("the zero map is not an isogeny")
    target = drinfeld_image(phi, a)
    n, k = target.degree, u.degree
    if k > n:
        raise NotAnIsogeny("isogeny degree exceeds that of phi_a")
    parent = phi.parent
    uhat = None
    u0 = u.coeff(0)
    try:
        inv = u0.inverse()
    except (AlgebraError, ZeroDivisionError):
        inv = None
    if inv is not None:
        b = []
        for j in range(n - k + 1):
            acc = target.coeff(j)
            for i in range(1, min(j, k) + 1):
                acc = acc - u.coeff(i) * b[j - i].frobenius(i)
            b.append(acc * inv)
        uhat = SkewPoly(b, parent)
    else:
        try:
            uhat, rem = skew_right_divide(target, u)
        except NotDivisible as exc:
            raise DegenerateDenominator(0, "u_0 is not invertible and right division failed") from exc
        if not rem.is_zero():
            raise NotAnIsogeny("u does not right-divide phi_a")
    if skew_mul(u, uhat) != target or skew_mul(uhat, u) != target:
        raise NotAnIsogeny("no dual: the composition identities fail")
    return uhat


# -- commutation systems --------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """Coefficient j of the identity u o u_hat = u_hat o u = phi_a.

    ``sides`` lists the distinct expressions in that order; all must be equal.
    """

    index: int
    sides: tuple

    def __str__(self):
        return " = ".join(str(s) for s in self.sides)


@dataclass
class CommutationSystem:
    ring: object
    u: SkewPoly
    uhat: SkewPoly
    phi_a: SkewPoly
    relations: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)


def commutation_system(r: int, q: int | None, k: int, a="T", *, base: str = "T",
                       top: str = "Delta", ctx: FieldCtx | None = None) -> CommutationSystem:
    """Coefficient-matching equations of u o u_hat = u_hat o u = phi_a.

    u = a0 x + ... + a_{k-1} x^(q^{k-1}) + x^(q^k) is monic; u_hat has
    coefficients b0, ... and top coefficient lc(phi_a).  phi has symbolic
    coefficients g1..g_{r-1} and ``top``.  With ``q=None`` the system is
    formal in q; otherwise it lives in a polynomial ring over F_q.
    """
    if r < 2:
        raise InvalidInput("rank must be at least 2")
    a_list = _parse_a(a, base)
    d = len(a_list) - 1
    if d < 1:
        raise InvalidInput("a must have positive degree")
    n = r * d
    if not 0 <= k < n:
        raise InvalidInput(f"isogeny tau-degree must satisfy 0 <= k < {n}")
    names = ([base] + [f"a{i}" for i in range(k)] + [f"b{i}" for i in range(n - k)]
             + [f"g{i}" for i in range(1, r)] + [top])
    if q is None:
        ring = FormalRing(tuple(names), base=base)
    else:
        fctx = ctx or FieldCtx.of_order(q)
        ring = PolyRing(fctx, tuple(names))
    phi = DrinfeldModule([ring.gen(f"g{i}") for i in range(1, r)] + [ring.gen(top)],
                         parent=ring, constant=ring.gen(base))
    phi_a = drinfeld_image(phi, a_list)
    u = SkewPoly([ring.gen(f"a{i}") for i in range(k)] + [ring.one], ring)
    uhat = SkewPoly([ring.gen(f"b{i}") for i in range(n - k)] + [phi_a.lc()], ring)
    left, right = skew_mul(u, uhat), skew_mul(uhat, u)
    rels = []
    for j in range(n + 1):
        sides = []
        for expr in (left.coeff(j), right.coeff(j), phi_a.coeff(j)):
            if expr not in sides:
                sides.append(expr)
        if len(sides) > 1:
            rels.append(Relation(j, tuple(sides)))
    return CommutationSystem(ring, u, uhat, phi_a, rels)


def _parse_a(a, base: str) -> list[int]:
    """Integer coefficient list of a univariate a given as text or a list."""
    if isinstance(a, (list, tuple)):
        return [int(c) for c in a]
    if isinstance(a, str):
        fr = FormalRing((base,), base=base)
        expr = fr.parse(a.replace("T", base) if base != "T" else a)
        out: dict[int, int] = {}
        for m, c in expr.terms.items():
            e = m[0]
            if len(e) > 1:
                raise InvalidInput("a must have integer exponents")
            out[e[0] if e else 0] = c
        n = max(out) if out else -1
        return [out.get(i, 0) for i in range(n + 1)]
    raise InvalidInput(f"cannot interpret {a!r} as a polynomial in {base}")


# -- randomized homomorphism check ------------------------------------------------

@dataclass
class HomCheckReport:
    q: int
    r: int
    trials: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def homomorphism_check(q: int, r: int, trials: int = 100, seed: int = 0,
                       max_deg: int = 3) -> HomCheckReport:
    """phi_{ab} = phi_a o phi_b and phi_{a+b} = phi_a + phi_b for random phi over F_q[T] and random a, b."""
    import random

    rng = random.Random(seed)
    ctx = FieldCtx.of_order(q)
    ring = PolyRing(ctx, ("T",))

    def rand_poly(deg: int, nonzero: bool) -> MPoly:
        while True:
            f = ring.from_univariate("T", [ring.const(ctx.elem(rng.randrange(q)))
                                           for _ in range(deg + 1)])
            if not (nonzero and f.is_zero()):
                return f

    report = HomCheckReport(q, r, trials)
    for t in range(trials):
        phi = DrinfeldModule([rand_poly(2, i == r - 1) for i in range(r)], parent=ring)
        a = rand_poly(rng.randrange(max_deg + 1), True)
        b = rand_poly(rng.randrange(max_deg + 1), True)
        pa, pb = drinfeld_image(phi, a), drinfeld_image(phi, b)
        if drinfeld_image(phi, a * b) != skew_mul(pa, pb):
            report.failures.append((t, "product", str(a), str(b)))
        s = a + b
        if (SkewPoly([], ring) if s.is_zero() else drinfeld_image(phi, s)) != pa + pb:
            report.failures.append((t, "sum", str(a), str(b)))
    return report
