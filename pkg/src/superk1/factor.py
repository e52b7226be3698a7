"""Factorization of univariate polynomials over finite fields.

Squarefree decomposition, distinct-degree factorization and equal-degree
splitting (Cantor-Zassenhaus).  The splitting step walks a fixed sequence
of trial polynomials instead of drawing random ones, so both the factors and
their order are reproducible.
"""

from __future__ import annotations

from sympy import factorint

from . import dense
from .fields import FieldError
from .polynomials import PolyError, UPoly


def _require_finite(F):
    if not F.is_finite:
        raise FieldError("factorization needs a finite coefficient field")


def _x(F):
    return [F.zero, F.one]


def _exact(F, a, b):
    q, r = dense.divmod_(F, a, b)
    assert not r
    return q


def _pth_root(F, f):
    p = F.characteristic
    e = F.order // p
    return [F.pow(f[i], e) for i in range(0, len(f), p)]


def squarefree_decomposition(F, f):
    """Monic f -> list of (squarefree factor, multiplicity)."""
    out = []
    i = 1
    c = dense.gcd(F, f, dense.deriv(F, f))
    w = _exact(F, f, c)
    while len(w) > 1:
        y = dense.gcd(F, w, c)
        z = _exact(F, w, y)
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = _exact(F, c, y)
    if len(c) > 1:
        p = F.characteristic
        for h, j in squarefree_decomposition(F, _pth_root(F, c)):
            out.append((h, j * p))
    return out


def distinct_degree(F, f):
    """Squarefree monic f -> list of (product of all degree-d factors, d)."""
    q = F.order
    out = []
    h = _x(F)
    g_rest = list(f)
    d = 1
    while len(g_rest) - 1 >= 2 * d:
        h = dense.powmod(F, h, q, g_rest)
        g = dense.gcd(F, g_rest, dense.sub(F, h, _x(F)))
        if len(g) > 1:
            out.append((g, d))
            g_rest = _exact(F, g_rest, g)
            h = dense.rem(F, h, g_rest)
        d += 1
    if len(g_rest) > 1:
        out.append((g_rest, len(g_rest) - 1))
    return out


def _element(F, i):
    """The i-th element of a finite field, digits base p (no enumeration)."""
    p = F.characteristic
    if F.kind == "prime-finite":
        return i % p
    digits = []
    for _ in range(F.degree):
        i, r = divmod(i, p)
        digits.append(r)
    return tuple(digits)


def _trial_polys(F, n):
    """Deterministic sequence of polynomials of degree 1 .. n-1."""
    q = F.order
    i = q
    limit = q ** n
    while i < limit:
        digits = []
        k = i
        while k:
            k, r = divmod(k, q)
            digits.append(_element(F, r))
        yield dense.trim(F, digits)
        i += 1


def _split_map(F, a, d, f):
    q = F.order
    if F.characteristic == 2:
        # absolute trace to F_2 of the degree-d extension
        total = list(a)
        cur = list(a)
        for _ in range(F.absolute_degree * d - 1):
            cur = dense.mulmod(F, cur, cur, f)
            total = dense.add(F, total, cur)
        return total
    e = (q ** d - 1) // 2
    return dense.sub(F, dense.powmod(F, a, e, f), [F.one])


def equal_degree(F, f, d):
    """Split a squarefree monic product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    for a in _trial_polys(F, n):
        b = _split_map(F, a, d, f)
        g = dense.gcd(F, f, b)
        if 1 < len(g) < len(f):
            return equal_degree(F, g, d) + equal_degree(F, _exact(F, f, g), d)
    raise PolyError("equal-degree splitting exhausted its trial sequence")  # pragma: no cover


def _sort_key(c):
    return (len(c), tuple(c[::-1]))


def factor_dense(F, f):
    """Return (leading coefficient, sorted [(monic irreducible, multiplicity)])."""
    _require_finite(F)
    f = dense.trim(F, list(f))
    if not f:
        raise PolyError("cannot factor the zero polynomial")
    lc = f[-1]
    f = dense.monic(F, f)
    found: dict = {}
    for s, mult in squarefree_decomposition(F, f):
        for g, d in distinct_degree(F, s):
            for h in equal_degree(F, g, d):
                key = tuple(h)
                found[key] = found.get(key, 0) + mult
    items = sorted(found.items(), key=lambda kv: _sort_key(kv[0]))
    return lc, [(list(h), e) for h, e in items]


def factor_over_finite_field(f: UPoly):
    """Factor a univariate polynomial over a finite field.

    Returns ``(leading_coefficient, [(UPoly, multiplicity), ...])`` with monic
    irreducible factors sorted by degree, then coefficients.
    """
    lc, items = factor_dense(f.field, f.c)
    return lc, [(UPoly(f.field, h, f.var), e) for h, e in items]


def roots_dense(F, f):
    """Distinct roots in F of a nonzero polynomial, in deterministic order."""
    _require_finite(F)
    f = dense.monic(F, dense.trim(F, list(f)))
    if not f:
        raise PolyError("zero polynomial has every element as root")
    if len(f) == 1:
        return []
    xq = dense.powmod(F, _x(F), F.order, f)
    g = dense.gcd(F, f, dense.sub(F, xq, _x(F)))
    if len(g) <= 1:
        return []
    roots = [F.neg(h[0]) for h in equal_degree(F, g, 1)]
    return sorted(roots)


def one_root(F, f, splits=False):
    """Some root in F of f, splitting only the smaller factor each time.

    ``splits=True`` promises that f is squarefree and splits over F.
    """
    _require_finite(F)
    g = f = dense.monic(F, dense.trim(F, list(f)))
    if not splits:
        xq = dense.powmod(F, _x(F), F.order, f)
        g = dense.gcd(F, f, dense.sub(F, xq, _x(F)))
    if len(g) <= 1:
        raise PolyError("polynomial has no root in the field")
    while len(g) > 2:
        for a in _trial_polys(F, len(g) - 1):
            h = dense.gcd(F, g, _split_map(F, a, 1, g))
            if 1 < len(h) < len(g):
                other = _exact(F, g, h)
                g = h if len(h) <= len(other) else other
                break
    return F.neg(dense.monic(F, g)[0])


def is_irreducible_dense(F, f):
    """Rabin's irreducibility test over a finite field."""
    _require_finite(F)
    f = dense.monic(F, dense.trim(F, list(f)))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = F.order
    x = _x(F)
    for r in factorint(n):
        h = x
        for _ in range(n // r):
            h = dense.powmod(F, h, q, f)
        if len(dense.gcd(F, f, dense.sub(F, h, x))) > 1:
            return False
    h = x
    for _ in range(n):
        h = dense.powmod(F, h, q, f)
    return dense.sub(F, h, x) == []


def is_irreducible(f: UPoly):
    return is_irreducible_dense(f.field, f.c)
