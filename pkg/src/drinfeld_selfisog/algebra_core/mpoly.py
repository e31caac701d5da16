"""Sparse multivariate polynomials over F_q.

A monomial is packed into one Python integer: the total degree sits in the most
significant 32-bit field, followed by the exponents in declared variable
order.  Integer order on packed monomials is therefore graded-lex order, and
monomial multiplication is integer addition.
"""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from functools import cached_property

from ..errors import ContextMismatch, DivisionByZero, InvalidInput, NotDivisible
from .fields import FieldCtx, FqElem

W = 32
_MASK = (1 << W) - 1
_GUARD = 1 << (W - 1)
MAX_EXP = _GUARD - 1


@dataclass(frozen=True)
class PolyRing:
    """F_q[v_1, ..., v_n] with a declared variable order."""

    ctx: FieldCtx
    vars: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise InvalidInput(f"duplicate variable names in {self.vars}")

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def T(self) -> "MPoly":
        return self.gen("T")

    @cached_property
    def shifts(self) -> tuple[int, ...]:
        n = self.n
        return tuple((n - 1 - i) * W for i in range(n))

    @cached_property
    def _tshift(self) -> int:
        return self.n * W

    @cached_property
    def guard(self) -> int:
        g = _GUARD << self._tshift
        for s in self.shifts:
            g |= _GUARD << s
        return g

    def pack(self, exps) -> int:
        exps = tuple(exps)
        if len(exps) != self.n:
            raise InvalidInput(f"exponent vector {exps} does not match {self.vars}")
        total = 0
        m = 0
        for e, s in zip(exps, self.shifts):
            if e < 0 or e > MAX_EXP:
                raise InvalidInput(f"exponent {e} out of range")
            total += e
            m |= e << s
        if total > MAX_EXP:
            raise InvalidInput("total degree out of range")
        return m | (total << self._tshift)

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & _MASK for s in self.shifts)

    def tdeg(self, m: int) -> int:
        return m >> self._tshift

    def index(self, var: str | int) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.vars.index(var)
        except ValueError:
            raise InvalidInput(f"{var!r} is not a variable of {self.vars}") from None

    def var_monomial(self, var, k: int = 1) -> int:
        i = self.index(var)
        return (k << self.shifts[i]) | (k << self._tshift)

    # -- constructors ------------------------------------------------------
    @property
    def zero(self) -> "MPoly":
        return MPoly(self, {})

    @property
    def one(self) -> "MPoly":
        return MPoly(self, {0: 1})

    def const(self, c) -> "MPoly":
        code = self._code(c)
        return MPoly(self, {0: code} if code else {})

    def gen(self, var) -> "MPoly":
        return MPoly(self, {self.var_monomial(var): 1})

    def gens(self) -> tuple["MPoly", ...]:
        return tuple(self.gen(v) for v in self.vars)

    def monomial(self, exps, c=1) -> "MPoly":
        code = self._code(c)
        return MPoly(self, {self.pack(exps): code} if code else {})

    def from_dict(self, d) -> "MPoly":
        terms: dict[int, int] = {}
        add = self.ctx.add
        for exps, c in d.items():
            code = self._code(c)
            if code:
                m = self.pack(exps)
                v = add(terms.get(m, 0), code)
                if v:
                    terms[m] = v
                else:
                    terms.pop(m, None)
        return MPoly(self, terms)

    def from_univariate(self, var, coeffs) -> "MPoly":
        """Assemble sum(coeffs[k] * var^k); coeffs may be a list or {k: MPoly}."""
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        out: dict[int, int] = {}
        i = self.index(var)
        for k, c in items:
            if c.ring != self:
                raise ContextMismatch("coefficient ring mismatch")
            mk = self.var_monomial(i, k) if k else 0
            for m, v in c.terms.items():
                out[m + mk] = v
        return MPoly(self, out)

    def _code(self, c) -> int:
        if isinstance(c, FqElem):
            if c.ctx != self.ctx:
                raise ContextMismatch("constant from another field")
            return c.v
        if isinstance(c, int):
            return self.ctx.from_int(c)
        raise InvalidInput(f"cannot use {c!r} as a constant")

    def __call__(self, value) -> "MPoly":
        if isinstance(value, MPoly):
            if value.ring == self:
                return value
            return value.change_ring(self)
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def parse(self, text: str) -> "MPoly":
        return _Parser(self, text).parse()

    def extend(self, *names: str) -> "PolyRing":
        return PolyRing(self.ctx, self.vars + tuple(n for n in names if n not in self.vars))

    def __repr__(self):
        return f"PolyRing({self.ctx!r}, {list(self.vars)})"


class MPoly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to field codes."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[int, int]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries -----------------------------------------------------
    @property
    def ctx(self) -> FieldCtx:
        return self.ring.ctx

    @property
    def parent(self) -> PolyRing:
        return self.ring

    def inverse(self) -> "MPoly":
        if not self.is_constant() or self.is_zero():
            raise NotDivisible(f"{self} is not a unit")
        return MPoly(self.ring, {0: self.ctx.inv(self.terms[0])})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_code(self) -> int:
        return self.terms.get(0, 0)

    def lm(self) -> int:
        return max(self.terms)

    def lc(self) -> int:
        return self.terms[max(self.terms)]

    def total_degree(self) -> int:
        return self.ring.tdeg(max(self.terms)) if self.terms else -1

    def degree(self, var=None) -> int:
        if var is None:
            return self.total_degree()
        if not self.terms:
            return -1
        s = self.ring.shifts[self.ring.index(var)]
        return max((m >> s) & _MASK for m in self.terms)

    def min_degree(self, var) -> int:
        s = self.ring.shifts[self.ring.index(var)]
        return min((m >> s) & _MASK for m in self.terms) if self.terms else -1

    def vars_used(self) -> set[int]:
        used = set()
        acc = 0
        for m in self.terms:
            acc |= m
        for i, s in enumerate(self.ring.shifts):
            if (acc >> s) & _MASK:
                used.add(i)
        return used

    def involves(self, var) -> bool:
        return self.degree(var) > 0

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in canonical (descending graded-lex) order."""
        return [(self.ring.unpack(m), self.terms[m]) for m in sorted(self.terms, reverse=True)]

    def coeff(self, exps) -> FqElem:
        return FqElem(self.ctx, self.terms.get(self.ring.pack(exps), 0))

    # -- equality ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, FqElem)):
            try:
                return self.terms == self.ring.const(other).terms
            except ContextMismatch:
                return False
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise ContextMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, FqElem)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        add = self.ctx.add
        for m, c in small.items():
            v = add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return MPoly(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, code: int) -> "MPoly":
        if code == 0:
            return self.ring.zero
        if code == 1:
            return self
        mul = self.ctx.mul
        return MPoly(self.ring, {m: mul(c, code) for m, c in self.terms.items()})

    def mul_monomial(self, mono: int, code: int = 1) -> "MPoly":
        if code == 0:
            return self.ring.zero
        mul = self.ctx.mul
        return MPoly(self.ring, {m + mono: mul(c, code) for m, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero
        if len(b) == 1:
            (m, c), = b.items()
            return self.mul_monomial(m, c)
        if len(a) == 1:
            (m, c), = a.items()
            return other.mul_monomial(m, c)
        if self.ring.tdeg(max(a)) + self.ring.tdeg(max(b)) > MAX_EXP:
            raise OverflowError("polynomial degree exceeds representable range")
        ctx = self.ctx
        out: dict[int, int] = {}
        get = out.get
        if ctx.e == 1:
            p = ctx.p
            for ma, ca in a.items():
                for mb, cb in b.items():
                    k = ma + mb
                    out[k] = get(k, 0) + ca * cb
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            mul, add = ctx.mul, ctx.add
            for ma, ca in a.items():
                for mb, cb in b.items():
                    k = ma + mb
                    out[k] = add(get(k, 0), mul(ca, cb))
            out = {m: c for m, c in out.items() if c}
        return MPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInput("negative power of a polynomial")
        if n == 0:
            return self.ring.one
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if self.ring.tdeg(m) * n > MAX_EXP:
                raise OverflowError("polynomial degree exceeds representable range")
            return MPoly(self.ring, {m * n: self.ctx.pow(c, n)})
        p = self.ctx.p
        # (sum c m)^(p^k) = sum c^(p^k) m^(p^k) in characteristic p
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (self._pth_power_k(k)) ** n if n > 1 else self._pth_power_k(k)
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _pth_power_k(self, k: int) -> "MPoly":
        f = self.ctx.p ** k
        if self.terms and self.ring.tdeg(max(self.terms)) * f > MAX_EXP:
            raise OverflowError("polynomial degree exceeds representable range")
        pw = self.ctx.pow
        return MPoly(self.ring, {m * f: pw(c, f) for m, c in self.terms.items()})

    def frobenius(self, k: int = 1) -> "MPoly":
        """Return self^(q^k): every exponent scaled by q^k, coefficients fixed."""
        if k == 0:
            return self
        f = self.ctx.q ** k
        if self.terms and self.ring.tdeg(max(self.terms)) * f > MAX_EXP:
            raise OverflowError("polynomial degree exceeds representable range")
        return MPoly(self.ring, {m * f: c for m, c in self.terms.items()})

    def monic(self) -> "MPoly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(self.ctx.inv(self.lc()))

    def divexact(self, other) -> "MPoly":
        """Exact quotient; raises NotDivisible when ``other`` does not divide self."""
        g = self._coerce(other)
        if g.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if not self.terms:
            return self
        if g.is_constant():
            return self.scale(self.ctx.inv(g.terms[0]))
        ctx = self.ctx
        mul, sub = ctx.mul, ctx.sub
        lm_g = max(g.terms)
        inv = ctx.inv(g.terms[lm_g])
        rest = [(m, c) for m, c in g.terms.items() if m != lm_g]
        guard = self.ring.guard
        r = dict(self.terms)
        heap = [-m for m in r]
        heapq.heapify(heap)
        q: dict[int, int] = {}
        while r:
            m = -heapq.heappop(heap)
            c = r.pop(m, 0)
            if not c:
                continue
            if ((m | guard) - lm_g) & guard != guard:
                raise NotDivisible("polynomial is not divisible")
            mq = m - lm_g
            cq = mul(c, inv)
            q[mq] = cq
            for mg, cg in rest:
                k = mq + mg
                old = r.get(k)
                v = sub(old or 0, mul(cq, cg))
                if v:
                    r[k] = v
                    if old is None:
                        heapq.heappush(heap, -k)
                elif old is not None:
                    del r[k]
        return MPoly(self.ring, q)

    def divides(self, other) -> bool:
        try:
            other.divexact(self)
            return True
        except NotDivisible:
            return False

    # -- univariate views --------------------------------------------------
    def coeffs_in(self, var) -> dict[int, "MPoly"]:
        """Decompose as sum_k c_k * var^k; returns {k: c_k} with var absent from c_k."""
        i = self.ring.index(var)
        s = self.ring.shifts[i]
        ts = self.ring._tshift
        out: dict[int, dict[int, int]] = {}
        for m, c in self.terms.items():
            k = (m >> s) & _MASK
            base = m - (k << s) - (k << ts)
            out.setdefault(k, {})[base] = c
        return {k: MPoly(self.ring, t) for k, t in out.items()}

    def coeff_list(self, var) -> list["MPoly"]:
        d = self.coeffs_in(var)
        n = max(d) if d else -1
        return [d.get(k, self.ring.zero) for k in range(n + 1)]

    def lead_coeff_in(self, var) -> "MPoly":
        d = self.coeffs_in(var)
        return d[max(d)] if d else self.ring.zero

    def diff(self, var) -> "MPoly":
        i = self.ring.index(var)
        s = self.ring.shifts[i]
        ts = self.ring._tshift
        ctx = self.ctx
        out: dict[int, int] = {}
        for m, c in self.terms.items():
            k = (m >> s) & _MASK
            kc = ctx.from_int(k)
            if kc == 0:
                continue
            out[m - (1 << s) - (1 << ts)] = ctx.mul(c, kc)
        return MPoly(self.ring, out)

    def subs(self, var, value) -> "MPoly":
        """Substitute a polynomial (same ring) for ``var``."""
        value = self._coerce(value)
        d = self.coeffs_in(var)
        if not d:
            return self
        result = self.ring.zero
        for k in range(max(d), -1, -1):
            result = result * value
            if k in d:
                result = result + d[k]
        return result

    def evaluate(self, values: dict) -> "MPoly":
        out = self
        for var, val in values.items():
            out = out.subs(var, val)
        return out

    def change_ring(self, ring: PolyRing, mapping: dict[str, str] | None = None) -> "MPoly":
        """Move to another ring, matching variables by name (after ``mapping``)."""
        if ring.ctx != self.ring.ctx:
            raise ContextMismatch("rings over different fields")
        mapping = mapping or {}
        idx = []
        for i, v in enumerate(self.ring.vars):
            target = mapping.get(v, v)
            idx.append(ring.vars.index(target) if target in ring.vars else None)
        out: dict[int, int] = {}
        add = self.ctx.add
        for m, c in self.terms.items():
            exps = self.ring.unpack(m)
            new = [0] * ring.n
            for i, e in enumerate(exps):
                if e:
                    if idx[i] is None:
                        raise InvalidInput(
                            f"variable {self.ring.vars[i]!r} missing from target ring")
                    new[idx[i]] += e
            k = ring.pack(new)
            v = add(out.get(k, 0), c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MPoly(ring, out)

    def to_dense(self, var) -> list[int]:
        """Dense coefficient list of a polynomial involving only ``var``."""
        i = self.ring.index(var)
        s = self.ring.shifts[i]
        out: list[int] = []
        for m, c in self.terms.items():
            k = (m >> s) & _MASK
            if m != self.ring.var_monomial(i, k) and not (k == 0 and m == 0):
                raise InvalidInput("polynomial involves other variables")
            if k >= len(out):
                out.extend([0] * (k + 1 - len(out)))
            out[k] = c
        return out

    def from_dense(self, var, coeffs: list[int]) -> "MPoly":
        i = self.ring.index(var)
        return MPoly(self.ring, {(self.ring.var_monomial(i, k) if k else 0): c
                                 for k, c in enumerate(coeffs) if c})

    # -- display -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        ctx = self.ctx
        parts = []
        for exps, c in self.sorted_terms():
            mon = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(self.ring.vars, exps) if e)
            cs = ctx.format_code(c)
            if ctx.e > 1 and "+" in cs:
                cs = f"({cs})"
            if not mon:
                parts.append(cs)
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MPoly({self})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


class _Parser:
    """Recursive-descent parser for expressions like ``T^2 + 3*T*y - (y+1)^2``."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if not mt or mt.end() == pos:
                raise InvalidInput(f"cannot parse {text!r} at position {pos}")
            self.tokens.append(mt.group(1) or mt.group(2) or mt.group(3))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> MPoly:
        if not self.tokens:
            raise InvalidInput("empty polynomial expression")
        out = self.expr()
        if self.peek() is not None:
            raise InvalidInput(f"unexpected token {self.peek()!r}")
        return out

    def expr(self) -> MPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MPoly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = acc * self.factor()
            elif tok is not None and (tok == "(" or tok[0].isalnum() or tok[0] == "_"):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MPoly:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise InvalidInput("exponent must be a nonnegative integer")
            base = base ** int(tok)
        return base

    def atom(self) -> MPoly:
        tok = self.take()
        if tok is None:
            raise InvalidInput("unexpected end of expression")
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise InvalidInput("unbalanced parentheses")
            return inner
        if tok.isdigit():
            return self.ring.const(int(tok))
        if tok in self.ring.vars:
            return self.ring.gen(tok)
        if tok == "z" and self.ring.ctx.e > 1:
            return self.ring.const(self.ring.ctx([0, 1]))
        raise InvalidInput(f"unknown symbol {tok!r} (ring variables: {self.ring.vars})")
