"""Dense univariate polynomial kernels over an abstract field.

Polynomials are plain Python lists of raw field values, lowest degree first,
with no trailing zeros (the zero polynomial is ``[]``).  Every function takes
the coefficient field ``F`` as its first argument; ``F`` only needs the raw
interface of :class:`superk1.fields.Field` (``zero``, ``one``, ``add``,
``sub``, ``neg``, ``mul``, ``inv``).
"""

from __future__ import annotations


def trim(F, a):
    while a and a[-1] == F.zero:
        a.pop()
    return a


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def neg(F, a):
    return [F.neg(c) for c in a]


def sub(F, a, b):
    out = list(a) + [F.zero] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.sub(out[i], c)
    return trim(F, out)


def scale(F, a, c):
    if c == F.zero:
        return []
    return trim(F, [F.mul(x, c) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    zero = F.zero
    for i, x in enumerate(a):
        if x == zero:
            continue
        for j, y in enumerate(b):
            if y == zero:
                continue
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def shift(F, a, k):
    return [F.zero] * k + list(a) if a else []


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], r
    lead_inv = F.inv(b[-1])
    q = [F.zero] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == F.zero:
            continue
        c = F.mul(c, lead_inv)
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = F.sub(r[k - db + j], F.mul(c, b[j]))
    return trim(F, q), trim(F, r[:db])


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a or a[-1] == F.one:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` and ``g`` monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def mulmod(F, a, b, m):
    return rem(F, mul(F, a, b), m)


def powmod(F, a, e, m):
    result = [F.one]
    base = rem(F, a, m)
    while e:
        if e & 1:
            result = mulmod(F, result, base, m)
        e >>= 1
        if e:
            base = mulmod(F, base, base, m)
    return rem(F, result, m)


def power(F, a, e):
    result = [F.one]
    base = list(a)
    while e:
        if e & 1:
            result = mul(F, result, base)
        e >>= 1
        if e:
            base = mul(F, base, base)
    return result


def deriv(F, a):
    return trim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def compose(F, a, b):
    """``a(b(x))`` by Horner's rule."""
    acc = []
    for c in reversed(a):
        acc = add(F, mul(F, acc, b), [c] if c != F.zero else [])
    return acc
