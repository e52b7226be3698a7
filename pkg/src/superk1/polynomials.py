"""Univariate and sparse multivariate polynomials over :mod:`superk1.fields`.

``UPoly`` is a thin dense wrapper used for factorization and Jacobian
arithmetic.  ``Poly`` is the sparse multivariate type used for the curve and
correspondence coordinate rings; terms are kept in a dict from exponent tuple
to raw coefficient, printed in graded-lex order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from sympy import factorint

from . import dense
from .fields import QQ, Field, FieldElement, FieldError


class PolyError(ValueError):
    pass


def _fmt_coeff(F, c):
    if getattr(F, "degree", 1) > 1 and hasattr(F, "in_base") and F.in_base(c) is not None:
        c, F = F.in_base(c), F.base
    s = F.fmt(c)
    if any(op in s[1:] for op in "+-"):
        return f"({s})"
    return s


# ---------------------------------------------------------------------------
# dense univariate


class UPoly:
    __slots__ = ("field", "c", "var")

    def __init__(self, field: Field, coeffs, var="x", raw=True):
        self.field = field
        if raw:
            lst = list(coeffs)
        else:
            lst = [field.coerce(a) for a in coeffs]
        self.c = dense.trim(field, lst)
        self.var = var

    @classmethod
    def from_ints(cls, field, coeffs, var="x"):
        return cls(field, [field.coerce(a) for a in coeffs], var)

    @classmethod
    def x(cls, field, var="x"):
        return cls(field, [field.zero, field.one], var)

    def _wrap(self, c):
        return UPoly(self.field, c, self.var)

    def _c(self, other):
        if isinstance(other, UPoly):
            if other.field != self.field:
                raise PolyError("field mismatch")
            return other.c
        return dense.trim(self.field, [self.field.coerce(other)])

    @property
    def degree(self):
        return len(self.c) - 1 if self.c else -math.inf

    @property
    def lc(self):
        return self.c[-1] if self.c else self.field.zero

    def is_zero(self):
        return not self.c

    def __add__(self, o):
        return self._wrap(dense.add(self.field, self.c, self._c(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(dense.sub(self.field, self.c, self._c(o)))

    def __rsub__(self, o):
        return self._wrap(dense.sub(self.field, self._c(o), self.c))

    def __neg__(self):
        return self._wrap(dense.neg(self.field, self.c))

    def __mul__(self, o):
        return self._wrap(dense.mul(self.field, self.c, self._c(o)))

    __rmul__ = __mul__

    def __pow__(self, e):
        return self._wrap(dense.power(self.field, self.c, e))

    def __divmod__(self, o):
        q, r = dense.divmod_(self.field, self.c, self._c(o))
        return self._wrap(q), self._wrap(r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def __eq__(self, o):
        if isinstance(o, UPoly):
            return self.field == o.field and self.c == o.c
        try:
            return self.c == self._c(o)
        except (FieldError, PolyError):
            return False

    def __hash__(self):
        return hash((self.field, tuple(self.c)))

    def __call__(self, x):
        raw = x.raw if isinstance(x, FieldElement) else self.field.coerce(x)
        return FieldElement(self.field, dense.evaluate(self.field, self.c, raw))

    def monic(self):
        return self._wrap(dense.monic(self.field, self.c))

    def gcd(self, o):
        return self._wrap(dense.gcd(self.field, self.c, self._c(o)))

    def derivative(self):
        return self._wrap(dense.deriv(self.field, self.c))

    def to_text(self):
        return format_terms(self.field, [((i,), c) for i, c in enumerate(self.c)], (self.var,))

    __str__ = to_text

    def __repr__(self):
        return f"UPoly({self.to_text()} over {self.field})"


def gcd(f: UPoly, g: UPoly) -> UPoly:
    return f.gcd(g)


# ---------------------------------------------------------------------------
# text form


def _monomial(exps, names):
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_terms(F, terms, names):
    """Canonical text: graded lex, highest term first, e.g. ``-3*t1^10 - 3*t1^5``."""
    items = sorted(((e, c) for e, c in terms if c != F.zero),
                   key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)
    if not items:
        return "0"
    out = []
    for e, c in items:
        mon = _monomial(e, names)
        cs = _fmt_coeff(F, c)
        neg = cs.startswith("-") and not any(op in cs[1:] for op in "+-")
        if neg:
            cs = cs[1:]
        if not mon:
            body = cs
        elif cs == "1":
            body = mon
        else:
            body = f"{cs}*{mon}"
        out.append(("- " if neg else "+ ") + body)
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# ---------------------------------------------------------------------------
# sparse multivariate


class Poly:
    """Sparse polynomial in named variables over a field."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: Field, vars, terms=None):
        self.field = field
        self.vars = tuple(vars)
        z = field.zero
        self.terms = {e: c for e, c in (terms or {}).items() if c != z}

    # constructors --------------------------------------------------------
    @classmethod
    def gens(cls, field, vars):
        vars = tuple(vars)
        out = []
        for i in range(len(vars)):
            e = tuple(1 if j == i else 0 for j in range(len(vars)))
            out.append(cls(field, vars, {e: field.one}))
        return out

    @classmethod
    def const(cls, field, vars, c):
        return cls(field, vars, {(0,) * len(tuple(vars)): field.coerce(c)})

    def _zero_exp(self):
        return (0,) * len(self.vars)

    def _coerce(self, o):
        if isinstance(o, Poly):
            if o.field != self.field or o.vars != self.vars:
                raise PolyError(f"context mismatch: {self.field}{self.vars} vs {o.field}{o.vars}")
            return o
        return Poly.const(self.field, self.vars, o)

    def _new(self, terms):
        return Poly(self.field, self.vars, terms)

    # arithmetic ------------------------------------------------------------
    def __add__(self, o):
        o = self._coerce(o)
        F = self.field
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = F.add(t[e], c) if e in t else c
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        F = self.field
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = F.mul(c1, c2)
                t[e] = F.add(t[e], v) if e in t else v
        return self._new(t)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise PolyError("negative power of a polynomial")
        result = Poly.const(self.field, self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        return self._new({e: F.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, o):
        try:
            o = self._coerce(o)
        except (PolyError, FieldError):
            return False
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.field, self.vars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # structure -------------------------------------------------------------
    def index(self, var):
        try:
            return self.vars.index(var)
        except ValueError:
            raise PolyError(f"unknown variable {var!r}") from None

    def degree(self, var=None):
        if not self.terms:
            return -math.inf
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.index(var)
        return max(e[i] for e in self.terms)

    def coeffs_in(self, var):
        """Map k -> coefficient of var^k (as a Poly with var removed)."""
        i = self.index(var)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            e2 = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[e2] = c
        return {k: self._new(t) for k, t in out.items()}

    def constant_coeff(self):
        return self.terms.get(self._zero_exp(), self.field.zero)

    def is_constant(self):
        return all(e == self._zero_exp() for e in self.terms)

    def variables_used(self):
        return {v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)}

    def subs(self, mapping):
        """Substitute Polys (same context) or field values for variables."""
        idx = {self.index(v): (self._coerce(p)) for v, p in mapping.items()}
        cache: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = idx[i] ** k
            return cache[key]

        acc = self._new({})
        for e, c in self.terms.items():
            rest = tuple(0 if i in idx else a for i, a in enumerate(e))
            term = self._new({rest: c})
            for i, p in idx.items():
                if e[i]:
                    term = term * pw(i, e[i])
            acc = acc + term
        return acc

    def evaluate(self, values):
        """Evaluate at raw values (dict var -> raw) of ``self.field``."""
        F = self.field
        vals = [values[v] for v in self.vars]
        acc = F.zero
        for e, c in self.terms.items():
            term = c
            for a, x in zip(e, vals):
                if a:
                    term = F.mul(term, F.pow(x, a))
            acc = F.add(acc, term)
        return acc

    def map_coeffs(self, field, fn=None):
        """Change coefficient field; ``fn`` maps raw -> raw (default coerce)."""
        fn = fn or field.coerce
        return Poly(field, self.vars, {e: fn(c) for e, c in self.terms.items()})

    def with_vars(self, vars):
        """Re-embed in a larger ordered variable list."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, a in zip(pos, e):
                ne[i] = a
            t[tuple(ne)] = c
        return Poly(self.field, vars, t)

    def derivative(self, var):
        i = self.index(var)
        F = self.field
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                t[ne] = F.mul(c, F.from_int(e[i]))
        return self._new(t)

    def to_upoly(self, var):
        i = self.index(var)
        if self.variables_used() - {var}:
            raise PolyError("polynomial is not univariate in " + var)
        deg = self.degree(var)
        c = [self.field.zero] * (int(deg) + 1 if self.terms else 0)
        for e, v in self.terms.items():
            c[e[i]] = v
        return UPoly(self.field, c, var)

    @classmethod
    def from_upoly(cls, f: UPoly, vars, var):
        vars = tuple(vars)
        i = vars.index(var)
        t = {}
        for k, c in enumerate(f.c):
            e = [0] * len(vars)
            e[i] = k
            t[tuple(e)] = c
        return cls(f.field, vars, t)

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, b):
        """Exact division (lex order); raises if b does not divide self."""
        b = self._coerce(b)
        if not b.terms:
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        eb, cb = b.leading()
        inv = F.inv(cb)
        q: dict = {}
        r = self
        while r.terms:
            er, cr = r.leading()
            if any(x < y for x, y in zip(er, eb)):
                raise PolyError("division is not exact")
            mono = tuple(x - y for x, y in zip(er, eb))
            c = F.mul(cr, inv)
            q[mono] = c
            r = r - b * self._new({mono: c})
        return self._new(q)

    def to_text(self):
        return format_terms(self.field, self.terms.items(), self.vars)

    __str__ = to_text

    def __repr__(self):
        return f"Poly({self.to_text()})"


def poly_arithmetic(f: Poly, g: Poly, op: str, var: str | None = None):
    """Dispatcher over the basic polynomial operations.

    ``op`` is ``add``, ``sub``, ``mul``, ``divmod``, ``gcd`` or ``resultant``;
    ``divmod``/``gcd`` need univariate inputs in ``var``.
    """
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op in ("divmod", "gcd"):
        v = var or _single_var(f, g)
        fu, gu = f._coerce(f).to_upoly(v), f._coerce(g).to_upoly(v)
        if op == "gcd":
            return Poly.from_upoly(fu.gcd(gu), f.vars, v)
        q, r = divmod(fu, gu)
        return Poly.from_upoly(q, f.vars, v), Poly.from_upoly(r, f.vars, v)
    if op == "resultant":
        return resultant(f, g, var or _single_var(f, g))
    raise PolyError(f"unknown op {op!r}")


def _single_var(f, g):
    used = f.variables_used() | g.variables_used()
    if len(used) != 1:
        if not used:
            return f.vars[0]
        raise PolyError("a variable must be named")
    return used.pop()


def resultant(f: Poly, g: Poly, var: str) -> Poly:
    """Determinant of the Sylvester matrix in ``var`` (fraction-free Bareiss)."""
    g = f._coerce(g)
    if f.is_zero() or g.is_zero():
        return f._new({})
    cf, cg = f.coeffs_in(var), g.coeffs_in(var)
    df, dg = max(cf), max(cg)
    zero = f._new({})
    one = Poly.const(f.field, f.vars, 1)
    if df == 0 and dg == 0:
        return one
    n = df + dg
    rows = []
    for i in range(dg):
        row = [zero] * n
        for k, c in cf.items():
            row[i + df - k] = c
        rows.append(row)
    for i in range(df):
        row = [zero] * n
        for k, c in cg.items():
            row[i + dg - k] = c
        rows.append(row)
    return _bareiss_det(rows, one)


def _bareiss_det(M, one):
    n = len(M)
    M = [list(r) for r in M]
    sign = 1
    prev = one
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return one.scale(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


# ---------------------------------------------------------------------------
# triangular relations and normal forms


@dataclass(frozen=True)
class Relation:
    """Rewrite rule ``var^power -> replacement``."""

    var: str
    power: int
    replacement: Poly


def normal_form(f: Poly, relations, max_rounds=64) -> Poly:
    """Reduce ``f`` by rewriting every ``var^k`` with ``k >= power``.

    Relations are applied until no monomial is reducible.  The result is
    unique for the triangular systems used here (each replacement is
    eventually free of the rewritten variables).
    """
    rels = []
    for r in relations:
        if r.power < 1:
            raise PolyError("malformed relation: power must be positive")
        rep = f._coerce(r.replacement)
        rels.append((f.index(r.var), r.power, rep))
    if not rels:
        return f
    cur = f
    for _ in range(max_rounds):
        if not any(e[i] >= m for e in cur.terms for i, m, _ in rels):
            return cur
        for i, m, rep in rels:
            cache = {}
            acc: dict = {}
            F = cur.field
            reducible = []
            for e, c in cur.terms.items():
                if e[i] >= m:
                    reducible.append((e, c))
                else:
                    acc[e] = F.add(acc[e], c) if e in acc else c
            out = cur._new(acc)
            for e, c in reducible:
                k, rest = divmod(e[i], m)
                if k not in cache:
                    cache[k] = rep ** k
                mono = cur._new({e[:i] + (rest,) + e[i + 1:]: c})
                out = out + mono * cache[k]
            cur = out
    raise PolyError("malformed relation set: rewriting does not terminate")


def curve_relations(field, vars, m, n, p=None, form="t"):
    """Relations of the coordinate ring of D (or of C when ``p`` is None).

    vars is ``(y1, t1)`` or ``(y1, t1, y2)``.  ``form="t"`` uses
    ``y2^m -> t1^(p n) + 1``; ``form="y"`` uses ``y2^m -> (y1^m - 1)^p + 1``.
    """
    gens = Poly.gens(field, vars)
    y1, t1 = gens[0], gens[1]
    rels = [Relation(vars[0], m, t1 ** n + 1)]
    if p is not None:
        if form == "t":
            rels.append(Relation(vars[2], m, t1 ** (p * n) + 1))
        elif form == "y":
            rels.append(Relation(vars[2], m, (y1 ** m - 1) ** p + 1))
        else:
            raise PolyError(f"unknown relation form {form!r}")
    return rels


# ---------------------------------------------------------------------------
# discrete valuations and Eisenstein


@dataclass
class LocalValuationData:
    """A discrete valuation given by a callable, with its uniformizer.

    ``valuation(c)`` returns an int, or ``math.inf`` for zero; it raises
    :class:`PolyError` where it is undefined.
    """

    center: str
    uniformizer: Any
    valuation: Callable[[Any], float]

    def __post_init__(self):
        if self.valuation(self.uniformizer) != 1:
            raise PolyError(f"uniformizer at {self.center} does not have value 1")


def padic_valuation(q):
    def val(c):
        if isinstance(c, FieldElement):
            c = c.raw
        c = Fraction(c)
        if c == 0:
            return math.inf
        v = 0
        num, den = c.numerator, c.denominator
        while num % q == 0:
            num //= q
            v += 1
        while den % q == 0:
            den //= q
            v -= 1
        return v

    return LocalValuationData(f"{q}-adic", q, val)


def _coefficient_list(f, var):
    if isinstance(f, UPoly):
        F = f.field
        one = F.one
        return [FieldElement(F, c) for c in f.c], f.c and f.c[-1] == one
    if var is None:
        raise PolyError("a variable must be named for multivariate input")
    cs = f.coeffs_in(var)
    k = max(cs)
    zero = f._new({})
    lst = [cs.get(i, zero) for i in range(k + 1)]
    return lst, lst[-1] == 1


def eisenstein_check(f, v: LocalValuationData, var: str | None = None) -> bool:
    """True iff every non-leading coefficient has value >= 1 and the
    constant term has value exactly 1.  A true result certifies that the
    monic ``f`` is irreducible over the fraction field of the valuation ring."""
    coeffs, is_monic = _coefficient_list(f, var)
    if not is_monic:
        raise PolyError("Eisenstein check needs a monic polynomial")
    vals = [v.valuation(c) for c in coeffs[:-1]]
    if not vals:
        return False
    return all(x >= 1 for x in vals) and vals[0] == 1


def prime_factors(n):
    return sorted(factorint(n))


__all__ = [
    "UPoly", "Poly", "PolyError", "Relation", "normal_form", "curve_relations",
    "resultant", "poly_arithmetic", "LocalValuationData", "padic_valuation",
    "eisenstein_check", "gcd", "QQ",
]


def is_irreducible_dense(F, f):
    from .factor import is_irreducible_dense as _irr

    return _irr(F, f)
