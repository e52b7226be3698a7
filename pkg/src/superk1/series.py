"""Truncated power series over a field, used for local expansions on curves.

A series is a list of raw values of length ``prec`` (the coefficients of
s^0 .. s^(prec-1)).
"""

from __future__ import annotations

import math


def zero(F, prec):
    return [F.zero] * prec


def const(F, c, prec):
    s = zero(F, prec)
    s[0] = c
    return s


def add(F, a, b):
    return [F.add(x, y) for x, y in zip(a, b)]


def sub(F, a, b):
    return [F.sub(x, y) for x, y in zip(a, b)]


def scale(F, a, c):
    return [F.mul(x, c) for x in a]


def mul(F, a, b):
    prec = len(a)
    out = [F.zero] * prec
    z = F.zero
    for i, x in enumerate(a):
        if x == z:
            continue
        for j in range(prec - i):
            y = b[j]
            if y != z:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def power(F, a, e):
    prec = len(a)
    result = const(F, F.one, prec)
    base = list(a)
    while e:
        if e & 1:
            result = mul(F, result, base)
        e >>= 1
        if e:
            base = mul(F, base, base)
    return result


def inverse(F, a):
    if a[0] == F.zero:
        raise ZeroDivisionError("series with zero constant term is not a unit")
    prec = len(a)
    inv0 = F.inv(a[0])
    out = [F.zero] * prec
    out[0] = inv0
    for k in range(1, prec):
        acc = F.zero
        for i in range(1, k + 1):
            if a[i] != F.zero:
                acc = F.add(acc, F.mul(a[i], out[k - i]))
        out[k] = F.neg(F.mul(acc, inv0))
    return out


def valuation(F, a):
    for i, c in enumerate(a):
        if c != F.zero:
            return i
    return math.inf


def eval_poly(F, coeffs, z):
    """Evaluate sum coeffs[k] * z^k where each coeffs[k] is a series."""
    prec = len(z)
    acc = zero(F, prec)
    for c in reversed(coeffs):
        acc = add(F, mul(F, acc, z), c)
    return acc


def newton_root(F, coeffs, z0, prec):
    """Series root Z(s) of sum coeffs[k](s) Z^k with Z(0) = z0 a simple root.

    Quadratic Newton iteration; each step doubles the number of correct
    coefficients.
    """
    dcoeffs = [scale(F, c, F.from_int(k)) for k, c in enumerate(coeffs)][1:]
    z = const(F, z0, prec)
    if eval_poly(F, dcoeffs, z)[0] == F.zero:
        raise ValueError("root is not simple")
    correct = 1
    while correct < prec:
        val = eval_poly(F, coeffs, z)
        der = eval_poly(F, dcoeffs, z)
        z = sub(F, z, mul(F, val, inverse(F, der)))
        correct *= 2
    if any(c != F.zero for c in eval_poly(F, coeffs, z)):
        raise AssertionError("Newton iteration did not converge")  # pragma: no cover
    return z


def substitute(F, poly, series_by_var, embed):
    """Plug series into a sparse Poly; ``embed`` maps its coefficients into F."""
    prec = len(next(iter(series_by_var.values())))
    cache = {}

    def pw(i, k):
        if (i, k) not in cache:
            cache[(i, k)] = power(F, series_by_var[poly.vars[i]], k)
        return cache[(i, k)]

    acc = zero(F, prec)
    for e, c in poly.terms.items():
        term = const(F, embed(c), prec)
        for i, k in enumerate(e):
            if k:
                term = mul(F, term, pw(i, k))
        acc = add(F, acc, term)
    return acc
