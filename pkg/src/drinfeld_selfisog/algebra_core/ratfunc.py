"""Rational functions N/D over F_q in several variables."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ContextMismatch, DivisionByZero, InvalidInput
from .fields import FqElem
from .mpoly import MPoly, PolyRing
from .polyalg import mgcd


@dataclass(frozen=True)
class RatFuncField:
    """Fraction field of a PolyRing; also the coefficient-ring parent for skew polynomials."""

    ring: PolyRing

    @property
    def ctx(self):
        return self.ring.ctx

    @property
    def q(self) -> int:
        return self.ring.ctx.q

    @property
    def zero(self) -> "RatFunc":
        return RatFunc(self.ring.zero, self.ring.one, _reduced=True)

    @property
    def one(self) -> "RatFunc":
        return RatFunc(self.ring.one, self.ring.one, _reduced=True)

    @property
    def T(self) -> "RatFunc":
        return RatFunc(self.ring.gen("T"), self.ring.one, _reduced=True)

    def const(self, c) -> "RatFunc":
        return RatFunc(self.ring.const(c), self.ring.one, _reduced=True)

    def gen(self, var) -> "RatFunc":
        return RatFunc(self.ring.gen(var), self.ring.one, _reduced=True)

    def __call__(self, num, den=None) -> "RatFunc":
        num = self.ring(num)
        den = self.ring.one if den is None else self.ring(den)
        return RatFunc(num, den)


class RatFunc:
    """Reduced fraction num/den; den has graded-lex leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, _reduced: bool = False):
        if den is None:
            den = num.ring.one
        if num.ring != den.ring:
            raise ContextMismatch("numerator and denominator in different rings")
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = num.ring.one
            else:
                g = mgcd(num, den)
                if not g.is_constant():
                    num = num.divexact(g)
                    den = den.divexact(g)
            lc = den.lc()
            if lc != 1:
                inv = num.ctx.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def parent(self) -> RatFuncField:
        return RatFuncField(self.ring)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise ContextMismatch("rational functions over different rings")
            return other
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise ContextMismatch("rational function and polynomial over different rings")
            return RatFunc(other, self.ring.one, _reduced=True)
        if isinstance(other, (int, FqElem)):
            return RatFunc(self.ring.const(other), self.ring.one, _reduced=True)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = mgcd(self.den, o.den)
        if g.is_constant():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        d1, d2 = self.den.divexact(g), o.den.divexact(g)
        return RatFunc(self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return self.parent.zero
        # cross-cancel before multiplying to keep gcds small
        g1 = mgcd(self.num, o.den)
        g2 = mgcd(o.num, self.den)
        n1, d2 = self.num.divexact(g1), o.den.divexact(g1)
        n2, d1 = o.num.divexact(g2), self.den.divexact(g2)
        return _normalized(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return _normalized(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)._renorm()

    def frobenius(self, k: int = 1) -> "RatFunc":
        # q^k-th powers of coprime polynomials stay coprime, and a monic lc stays 1
        return RatFunc(self.num.frobenius(k), self.den.frobenius(k), _reduced=True)

    def _renorm(self) -> "RatFunc":
        lc = self.den.lc()
        if lc == 1:
            return self
        inv = self.num.ctx.inv(lc)
        return RatFunc(self.num.scale(inv), self.den.scale(inv), _reduced=True)

    def subs(self, var, value: "RatFunc") -> "RatFunc":
        """Substitute a rational function for a variable."""
        value = self._coerce(value)
        return _eval_poly(self.num, var, value) / _eval_poly(self.den, var, value)

    def change_ring(self, ring: PolyRing, mapping=None) -> "RatFunc":
        return RatFunc(self.num.change_ring(ring, mapping), self.den.change_ring(ring, mapping))

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ContextMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _normalized(num: MPoly, den: MPoly) -> RatFunc:
    """Build from a pair already known to be coprime."""
    if den.is_zero():
        raise DivisionByZero("rational function with zero denominator")
    if num.is_zero():
        return RatFunc(num, num.ring.one, _reduced=True)
    return RatFunc(num, den, _reduced=True)._renorm()


def _eval_poly(f: MPoly, var, value: RatFunc) -> RatFunc:
    d = f.coeffs_in(var)
    acc = value.parent.zero
    if not d:
        return acc
    for k in range(max(d), -1, -1):
        acc = acc * value
        if k in d:
            acc = acc + RatFunc(d[k], f.ring.one, _reduced=True)
    return acc


def frobenius_power(f, k: int):
    """f^(q^k) for an MPoly or RatFunc by exponent scaling."""
    if k < 0:
        raise InvalidInput("Frobenius power must be nonnegative")
    return f.frobenius(k)
