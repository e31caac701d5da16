"""Dense univariate polynomials over F_q as lists of field codes (low -> high).

The zero polynomial is the empty list.  These helpers back the univariate
base cases of the multivariate algorithms and all arithmetic in A = F_q[T].
"""
from __future__ import annotations

from ..errors import DivisionByZero
from .fields import FieldCtx


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: list[int]) -> int:
    return len(a) - 1


def add(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = ctx.add(out[i], c)
    return trim(out)


def neg(ctx: FieldCtx, a: list[int]) -> list[int]:
    return [ctx.neg(c) for c in a]


def sub(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    return add(ctx, a, neg(ctx, b))


def scale(ctx: FieldCtx, a: list[int], c: int) -> list[int]:
    if c == 0:
        return []
    return [ctx.mul(x, c) for x in a]


def mul(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    if ctx.e == 1:
        p = ctx.p
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim([c % p for c in out])
    m, ad = ctx.mul, ctx.add
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = ad(out[i + j], m(x, y))
    return trim(out)


def divmod_(ctx: FieldCtx, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], trim(r)
    inv = ctx.inv(b[-1])
    quot = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = ctx.mul(c, inv)
        quot[k - db] = c
        for i in range(db + 1):
            if b[i]:
                r[k - db + i] = ctx.sub(r[k - db + i], ctx.mul(c, b[i]))
    return trim(quot), trim(r[:db])


def rem(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    return divmod_(ctx, a, b)[1]


def monic(ctx: FieldCtx, a: list[int]) -> list[int]:
    if not a or a[-1] == 1:
        return list(a)
    return scale(ctx, a, ctx.inv(a[-1]))


def gcd(ctx: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, rem(ctx, a, b)
    return monic(ctx, a)


def xgcd(ctx: FieldCtx, a: list[int], b: list[int]):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        qt, r = divmod_(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(ctx, s0, mul(ctx, qt, s1))
        t0, t1 = t1, sub(ctx, t0, mul(ctx, qt, t1))
    if not r0:
        return [], [], []
    c = ctx.inv(r0[-1])
    return scale(ctx, r0, c), scale(ctx, s0, c), scale(ctx, t0, c)


def deriv(ctx: FieldCtx, a: list[int]) -> list[int]:
    return trim([ctx.mul(ctx.from_int(i), a[i]) for i in range(1, len(a))])


def evaluate(ctx: FieldCtx, a: list[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def power(ctx: FieldCtx, a: list[int], n: int) -> list[int]:
    result, base = [1], list(a)
    while n:
        if n & 1:
            result = mul(ctx, result, base)
        n >>= 1
        if n:
            base = mul(ctx, base, base)
    return result


def is_irreducible(ctx: FieldCtx, a: list[int]) -> bool:
    """Irreducibility over F_q via gcd(a, x^(q^i) - x) for i <= deg/2."""
    n = deg(a)
    if n < 1:
        return False
    if n == 1:
        return True
    a = monic(ctx, a)
    x = [0, 1]
    xp = x
    for _ in range(n // 2):
        xp = _powmod(ctx, xp, ctx.q, a)
        if deg(gcd(ctx, a, sub(ctx, xp, x))) > 0:
            return False
    return True


def _powmod(ctx: FieldCtx, base: list[int], n: int, m: list[int]) -> list[int]:
    result = [1]
    base = rem(ctx, base, m)
    while n:
        if n & 1:
            result = rem(ctx, mul(ctx, result, base), m)
        n >>= 1
        if n:
            base = rem(ctx, mul(ctx, base, base), m)
    return result
