"""Finite fields F_q = F_p[z]/(m(z)).

Elements are stored as integer codes ``sum(c_i * p**i)`` of their coefficient
vector in the basis 1, z, ..., z^(e-1).  The polynomial layer works directly on
codes; :class:`FqElem` is the public value type wrapping a code.
"""
from __future__ import annotations

import itertools
from random import Random
from dataclasses import dataclass
from functools import cached_property

from ..errors import ContextMismatch, DivisionByZero, InvalidInput

# Sparse irreducible moduli, coefficients low -> high.
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1), (2, 3): (1, 1, 0, 1), (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1), (3, 3): (1, 2, 0, 1), (3, 4): (2, 1, 0, 0, 1),
    (5, 2): (2, 0, 1), (5, 3): (1, 1, 0, 1), (5, 4): (2, 0, 0, 0, 1),
    (7, 2): (1, 0, 1), (7, 3): (2, 0, 0, 1), (7, 4): (1, 1, 0, 0, 1),
    (11, 2): (1, 0, 1), (11, 3): (4, 1, 0, 1), (11, 4): (2, 1, 0, 0, 1),
    (13, 2): (2, 0, 1), (13, 3): (2, 0, 0, 1), (13, 4): (2, 0, 0, 0, 1),
}

_TABLE_LIMIT = 1 << 20
_ADD_TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise InvalidInput otherwise."""
    if q < 2:
        raise InvalidInput(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, m = 0, q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise InvalidInput(f"{q} is not a prime power")
    return p, e


def _fp_prem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        d = len(a) - len(b)
        for i, x in enumerate(b):
            a[i + d] = (a[i + d] - c * x) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible_fp(f: tuple[int, ...] | list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    e = len(f) - 1
    for d in range(1, e // 2 + 1):
        for cs in itertools.product(range(p), repeat=d):
            if not _fp_prem(list(f), list(cs) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """The field F_q with q = p**e, given by a monic irreducible modulus."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidInput(f"characteristic {self.p} is not prime")
        if self.e < 1:
            raise InvalidInput("extension degree must be >= 1")
        mod = tuple(int(c) % self.p for c in self.modulus)
        if not mod:
            if self.e == 1:
                mod = (0, 1)
            elif (self.p, self.e) in MODULUS_TABLE:
                mod = MODULUS_TABLE[(self.p, self.e)]
            else:
                raise InvalidInput(
                    f"no built-in modulus for p={self.p}, e={self.e}; supply one")
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise InvalidInput("modulus must be monic of degree e")
        if self.e > 1 and not is_irreducible_fp(mod, self.p):
            raise InvalidInput(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def of_order(cls, q: int, modulus=None) -> "FieldCtx":
        p, e = prime_power(q)
        return cls(p, e, tuple(modulus or ()))

    @property
    def q(self) -> int:
        return self.p ** self.e

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    # -- code-level arithmetic ---------------------------------------------
    def to_coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = [int(c) % self.p for c in cs]
        if len(cs) > self.e:
            cs = _reduce_poly(cs, self.modulus, self.p)
        v = 0
        for c in reversed(cs):
            v = v * self.p + c
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        x, y = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.e - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] = (prod[i + j] + xi * yj) % self.p
        return self.from_coeffs(_reduce_poly(prod, self.modulus, self.p))

    def _slow_add(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def _slow_neg(self, a: int) -> int:
        p = self.p
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * scale
            scale *= p
        return out

    @cached_property
    def _log_tables(self) -> tuple[list[int], list[int]]:
        q = self.q
        if q > _TABLE_LIMIT:
            raise InvalidInput(f"field of order {q} exceeds table limit")
        for g in range(2 if q > 2 else 1, q):
            exp = [1] * (q - 1)
            x = 1
            ok = True
            for k in range(1, q - 1):
                x = self._slow_mul(x, g)
                if x == 1:
                    ok = False
                    break
                exp[k] = x
            if ok:
                log = [0] * q
                for k, v in enumerate(exp):
                    log[v] = k
                return exp, log
        raise AssertionError("no primitive element found")  # pragma: no cover

    @cached_property
    def _add_table(self) -> list[list[int]] | None:
        if self.q > _ADD_TABLE_LIMIT:
            return None
        return [[self._slow_add(a, b) for b in range(self.q)] for a in range(self.q)]

    @cached_property
    def _neg_table(self) -> list[int]:
        return [self._slow_neg(a) for a in range(self.q)]

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self._add_table
        return t[a][b] if t is not None else self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._log_tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in " + repr(self))
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._log_tables
        return exp[(-log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, n, self.p)
        exp, log = self._log_tables
        return exp[(log[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return n % self.p

    @property
    def generator(self) -> int:
        """Code of the fixed primitive element (smallest code generating F_q^*)."""
        if self.q == 2:
            return 1
        return self._log_tables[0][1]

    def nonzero_ordered(self) -> list[int]:
        """F_q^* listed as 1, w, w^2, ... for the fixed generator w."""
        if self.q == 2:
            return [1]
        return list(self._log_tables[0])

    # -- element-level API -------------------------------------------------
    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.ctx != self:
                raise ContextMismatch("element belongs to another field")
            return value
        if isinstance(value, (list, tuple)):
            return FqElem(self, self.from_coeffs(value))
        return FqElem(self, self.from_int(int(value)))

    def const(self, c) -> "FqElem":
        return self(c)

    def elem(self, code: int) -> "FqElem":
        return FqElem(self, code)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    def elements(self) -> list["FqElem"]:
        return [FqElem(self, a) for a in range(self.q)]

    def random(self, rng: Random, nonzero: bool = False) -> "FqElem":
        lo = 1 if nonzero else 0
        return FqElem(self, rng.randrange(lo, self.q))

    def format_code(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        parts = []
        for i, c in reversed(list(enumerate(self.to_coeffs(a)))):
            if c == 0:
                continue
            mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mon:
                parts.append(str(c))
            else:
                parts.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(parts) if parts else "0"


def _reduce_poly(cs: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    cs = list(cs)
    e = len(modulus) - 1
    while len(cs) > e:
        c = cs.pop()
        if c:
            d = len(cs) - e
            for i in range(e):
                cs[d + i] = (cs[d + i] - c * modulus[i]) % p
    return cs + [0] * (e - len(cs))


@dataclass(frozen=True)
class FqElem:
    ctx: FieldCtx
    v: int

    def _check(self, other) -> int:
        if isinstance(other, FqElem):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
            return other.v
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.add(self.v, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.sub(self.v, b))

    def __rsub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.sub(b, self.v))

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg(self.v))

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.mul(self.v, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.mul(self.v, self.ctx.inv(b)))

    def __pow__(self, n: int):
        return FqElem(self.ctx, self.ctx.pow(self.v, n))

    def inverse(self) -> "FqElem":
        return FqElem(self.ctx, self.ctx.inv(self.v))

    def is_zero(self) -> bool:
        return self.v == 0

    def frobenius(self, k: int = 1) -> "FqElem":
        # x -> x^(q^k) is the identity on F_q
        return self

    @property
    def parent(self) -> FieldCtx:
        return self.ctx

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.to_coeffs(self.v)

    def __repr__(self):
        return self.ctx.format_code(self.v)


def field_suite(ctx: FieldCtx, op: str, x: FqElem, y: FqElem | None = None) -> FqElem:
    """Dispatch one field operation by name: add, mul, neg, inv or pow.

    For ``pow`` the exponent ``y`` is a plain integer.
    """
    if x.ctx != ctx or (isinstance(y, FqElem) and y.ctx != ctx):
        raise ContextMismatch("operands must live in the given field")
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x ** int(y)
    raise InvalidInput(f"unknown field operation {op!r}")
