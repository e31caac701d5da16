"""Arithmetic in F_q(T)[y]/(h) for a monic, squarefree h in y.

An element is stored as num/den with num in F_q[T][y] reduced mod h and
den in F_q[T] (graded-lex leading coefficient 1, coprime to the T-content of num).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ContextMismatch, InvalidInput, NonInvertibleDenominator
from .fields import FqElem
from .mpoly import MPoly, PolyRing
from .polyalg import bareiss_det, content, mgcd, mult_matrix, reduce_mod_monic


@dataclass(frozen=True)
class QuotientRing:
    modulus: MPoly
    var: str = "y"
    base: str = "T"

    def __post_init__(self):
        ring = self.modulus.ring
        v = ring.index(self.var)
        if set(self.modulus.vars_used()) - {v, ring.index(self.base)}:
            raise InvalidInput("modulus may involve only the base variable and the main variable")
        lead = self.modulus.lead_coeff_in(v)
        if self.modulus.degree(v) < 1 or not (lead.is_constant() and lead.constant_code() == 1):
            raise InvalidInput("modulus must be monic of positive degree in the main variable")

    @property
    def ring(self) -> PolyRing:
        return self.modulus.ring

    @property
    def degree(self) -> int:
        return self.modulus.degree(self.var)

    @property
    def q(self) -> int:
        return self.ring.ctx.q

    @property
    def zero(self) -> "QElem":
        return QElem(self, self.ring.zero, self.ring.one)

    @property
    def one(self) -> "QElem":
        return QElem(self, self.ring.one, self.ring.one)

    @property
    def T(self) -> "QElem":
        return QElem(self, self.ring.gen(self.base), self.ring.one)

    @property
    def y(self) -> "QElem":
        return self(self.ring.gen(self.var))

    def const(self, c) -> "QElem":
        return QElem(self, self.ring.const(c), self.ring.one)

    def __call__(self, value, den: MPoly | None = None) -> "QElem":
        """Coerce a polynomial, rational function or constant into the ring."""
        from .ratfunc import RatFunc

        if isinstance(value, QElem):
            if value.parent != self:
                raise ContextMismatch("element of another quotient ring")
            return value
        if isinstance(value, RatFunc):
            return self(value.num) * self(value.den).inverse()
        if isinstance(value, (int, FqElem)):
            return self.const(value)
        if isinstance(value, str):
            value = self.ring.parse(value)
        if not isinstance(value, MPoly):
            raise InvalidInput(f"cannot coerce {value!r} into the quotient ring")
        if value.ring != self.ring:
            value = value.change_ring(self.ring)
        num = reduce_mod_monic(value, self.modulus, self.var)
        return _make(self, num, den if den is not None else self.ring.one)


class QElem:
    __slots__ = ("parent", "num", "den")

    def __init__(self, parent: QuotientRing, num: MPoly, den: MPoly):
        self.parent = parent
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, QElem):
            if other.parent != self.parent:
                raise ContextMismatch("elements of different quotient rings")
            return other
        if isinstance(other, (int, FqElem, MPoly)):
            return self.parent(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return _make(self.parent, self.num + o.num, self.den)
        return _make(self.parent, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QElem(self.parent, -self.num, self.den)

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
        P = self.parent
        num = reduce_mod_monic(self.num * o.num, P.modulus, P.var)
        return _make(P, num, self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.parent.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, k: int = 1) -> "QElem":
        if k == 0:
            return self
        P = self.parent
        num = reduce_mod_monic(self.num.frobenius(k), P.modulus, P.var)
        return _make(P, num, self.den.frobenius(k))

    def inverse(self) -> "QElem":
        """Inverse by Cramer's rule on the multiplication matrix of num."""
        P = self.parent
        ring = P.ring
        if self.is_zero():
            raise NonInvertibleDenominator("zero is not invertible")
        m = mult_matrix(self.num, P.modulus, P.var)
        det = bareiss_det(m, ring)
        if det.is_zero():
            raise NonInvertibleDenominator("element is a zero divisor in the quotient ring")
        n = len(m)
        coords = []
        for i in range(n):
            mi = [row[:i] + [ring.one if r == 0 else ring.zero] + row[i + 1:]
                  for r, row in enumerate(m)]
            coords.append(bareiss_det(mi, ring))
        num = ring.from_univariate(P.var, coords) * self.den
        return _make(P, num, det)

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

    def to_ratfunc(self):
        from .ratfunc import RatFunc
        return RatFunc(self.num, self.den)

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"QElem({self})"


def _make(P: QuotientRing, num: MPoly, den: MPoly) -> QElem:
    ring = P.ring
    if num.is_zero():
        return QElem(P, num, ring.one)
    if not den.is_constant():
        g = mgcd(content(num, P.var), den)
        if not g.is_constant():
            num, den = num.divexact(g), den.divexact(g)
    lc = den.lc()
    if lc != 1:
        inv = ring.ctx.inv(lc)
        num, den = num.scale(inv), den.scale(inv)
    return QElem(P, num, den)
