"""The superelliptic curve y^m = t^n + 1: points, valuations, divisors,
point counts and the Frobenius characteristic polynomial.

Closed points are Galois orbits of geometric points.  In characteristic 0
all geometric points that occur live in one cyclotomic *ambient* field
QQ(zeta_N); the base field is the fixed field of a subgroup ``galois`` of
(Z/N)^*.  Over a prime field F_p a closed point of degree d is stored as its
Frobenius orbit inside the canonical F_{p^d} of :func:`finite_field`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from sympy import isprime

from . import dense, series
from .factor import factor_dense, one_root, roots_dense
from .fields import (QQ, ExtensionField, Field, cyclotomic_field,
                     finite_field, prime_field, primitive_element)
from .polynomials import Poly, Relation, UPoly, format_terms, normal_form, resultant


class CurveError(ValueError):
    """Raised for invalid curve data; ``violations`` names each hypothesis."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


# ---------------------------------------------------------------------------
# points and divisors


@dataclass(frozen=True, eq=False)
class ClosedPoint:
    kind: str
    field: Field | None = None
    y: object = None
    t: object = None
    orbit: frozenset = frozenset()

    @property
    def degree(self):
        return 1 if self.kind == "infinity" else len(self.orbit)

    @property
    def is_infinity(self):
        return self.kind == "infinity"

    def key(self):
        if self.is_infinity:
            return ("inf",)
        return (self.field.key(), self.orbit)

    def __eq__(self, other):
        return isinstance(other, ClosedPoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def conjugates(self):
        return sorted(self.orbit)

    def sort_key(self):
        if self.is_infinity:
            return (1, 0, "")
        return (0, self.degree, self.text())

    def minpoly(self, coord):
        """Product of (X - c) over the distinct conjugate values of a coordinate."""
        F = self.field
        vals = sorted({pt[0 if coord == "y" else 1] for pt in self.orbit})
        poly = [F.one]
        for v in vals:
            poly = dense.mul(F, poly, [F.neg(v), F.one])
        return poly

    def text(self):
        if self.is_infinity:
            return "inf"
        F = self.field
        sub = _base_coeff_fmt(F)
        tp = format_terms(sub[0], [((i,), sub[1](c)) for i, c in enumerate(self.minpoly("t"))], ("t",))
        yp = format_terms(sub[0], [((i,), sub[1](c)) for i, c in enumerate(self.minpoly("y"))], ("y",))
        return f"({tp}; {yp})"

    def __repr__(self):
        return self.text()


INFINITY = ClosedPoint("infinity")


def _base_coeff_fmt(F):
    """Field and coefficient map used to print min-polys of points."""
    if isinstance(F, ExtensionField):
        base = F.base

        def conv(c):
            b = F.in_base(c)
            return b if b is not None else c

        class _Mixed:
            zero = base.zero
            one = base.one
            degree = 1
            characteristic = F.characteristic

            @staticmethod
            def fmt(c):
                return F.fmt(c) if isinstance(c, tuple) else base.fmt(c)

        return _Mixed, conv
    return F, (lambda c: c)


class DivisorOnCurve:
    """Finite formal sum of closed points with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for P, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[P] = self.terms.get(P, 0) + c
        self.terms = {P: c for P, c in self.terms.items() if c}

    def __add__(self, other):
        t = dict(self.terms)
        for P, c in other.terms.items():
            t[P] = t.get(P, 0) + c
        return DivisorOnCurve(t)

    def __neg__(self):
        return DivisorOnCurve({P: -c for P, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return DivisorOnCurve({P: k * c for P, c in self.terms.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return isinstance(other, DivisorOnCurve) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self):
        return sum(c * P.degree for P, c in self.terms.items())

    def support(self):
        return sorted(self.terms, key=lambda P: P.sort_key())

    def coefficient(self, P):
        return self.terms.get(P, Fraction(0))

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for P in self.support():
            c = self.terms[P]
            parts.append(f"{c}*{P.text()}")
        return " + ".join(parts)

    def to_json(self):
        return [{"point": P.text(), "degree": P.degree, "coefficient": str(self.terms[P])}
                for P in self.support()]

    __repr__ = text


class RationalFunction:
    """Quotient num/den of polynomials in the curve coordinates (y, t)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = den if den is not None else Poly.const(num.field, num.vars, 1)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    def __mul__(self, o):
        o = _as_rf(o, self.num)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _as_rf(o, self.num)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __pow__(self, k):
        if k >= 0:
            return RationalFunction(self.num ** k, self.den ** k)
        return RationalFunction(self.den ** (-k), self.num ** (-k))

    def text(self):
        if self.den == 1:
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    __repr__ = text


def _as_rf(o, like):
    if isinstance(o, RationalFunction):
        return o
    if isinstance(o, Poly):
        return RationalFunction(o)
    return RationalFunction(Poly.const(like.field, like.vars, o))


# ---------------------------------------------------------------------------
# the curve


def _embed_cyclotomic(src, dst, raw):
    """QQ(zeta_M) -> QQ(zeta_N) for M | N, zeta_M -> zeta_N^(N/M)."""
    if src == dst:
        return raw
    if src == QQ:
        return dst.from_fraction(raw)
    step = dst.conductor // src.conductor
    acc = dst.zero
    for i, c in enumerate(raw):
        if c:
            acc = dst.add(acc, tuple(c * x for x in dst.zeta_power(i * step)))
    return acc


class Curve:
    """Smooth projective model of y^m = t^n + 1 over a base field."""

    yvar, tvar = "y", "t"

    def __init__(self, m, n, base, *, ambient=None, galois=None, check=True):
        self.m, self.n, self.base = m, n, base
        if check:
            violations = hypothesis_violations(m, n, base.characteristic)
            if violations:
                raise CurveError(violations)
        self.genus = (m - 1) * (n - 1) // 2
        self.p = base.characteristic
        if self.p == 0:
            M = getattr(base, "conductor", None) or 1
            self.ambient = ambient or cyclotomic_field(lcm(M, m, n))
            N = self.ambient.conductor
            self.galois = tuple(galois if galois is not None else
                                [a for a in self.ambient.galois_group() if (a - 1) % M == 0])
            self.coeff_field = self.ambient
            self._base_embed = lambda c: _embed_cyclotomic(base, self.ambient, c)
            assert N % M == 0
        else:
            self.ambient = None
            self.galois = None
            self.coeff_field = base
            self._base_embed = base.coerce

    # polynomials ---------------------------------------------------------
    @property
    def vars(self):
        return (self.yvar, self.tvar)

    def gens(self):
        return Poly.gens(self.coeff_field, self.vars)

    def const(self, c):
        return Poly.const(self.coeff_field, self.vars, c)

    def from_base(self, c):
        """Constant function with a value given in the base field."""
        return Poly(self.coeff_field, self.vars, {(0, 0): self._base_embed(self.base.coerce(c))})

    def relations(self):
        y, t = self.gens()
        return [Relation(self.yvar, self.m, t ** self.n + 1)]

    def equation(self):
        y, t = self.gens()
        return y ** self.m - t ** self.n - 1

    def reduce(self, f):
        return normal_form(f, self.relations())

    def key(self):
        return (self.m, self.n, self.base.key(), self.galois)

    def __eq__(self, other):
        return isinstance(other, Curve) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Curve(y^{self.m} = t^{self.n} + 1 over {self.base})"

    # points --------------------------------------------------------------
    @property
    def infinity(self):
        return INFINITY

    def _orbit(self, F, y, t):
        if self.p == 0:
            return frozenset((F.galois(y, a), F.galois(t, a)) for a in self.galois)
        pts = {(y, t)}
        cy, ct = F.frobenius(y), F.frobenius(t)
        while (cy, ct) not in pts:
            pts.add((cy, ct))
            cy, ct = F.frobenius(cy), F.frobenius(ct)
        return frozenset(pts)

    def point(self, y, t, field=None):
        """Closed point through the geometric point (y, t) of ``field``."""
        F = field or (self.ambient if self.p == 0 else self.base)
        y, t = F.coerce(y), F.coerce(t)
        if F.pow(y, self.m) != F.add(F.pow(t, self.n), F.one):
            raise CurveError([f"({F.fmt(y)}, {F.fmt(t)}) is not on {self}"])
        if self.p and self.base.degree != 1:
            raise CurveError(["closed points need a prime base field"])
        orbit = self._orbit(F, y, t)
        if self.p and len(orbit) != F.absolute_degree:
            # store in the canonical field of the residue degree
            d = len(orbit)
            K = finite_field(self.p, d)
            return self._canonical_point(K, F, y, t)
        y0, t0 = min(orbit)
        return ClosedPoint("affine", F, y0, t0, orbit)

    def _canonical_point(self, K, F, y, t):
        # embed K into F by a root of its modulus, then solve linear systems
        r = one_root(F, [F.from_int(int(c)) for c in K.modulus], splits=True)
        basis = [F.pow(r, i) for i in range(K.degree)]

        def express(v):
            return _solve_in_basis(F, basis, v)

        return self.point(express(y), express(t), K)

    def stabilizer(self, P):
        F = P.field
        return tuple(a for a in self.galois
                     if F.galois(P.y, a) == P.y and F.galois(P.t, a) == P.t)

    def over_residue_field(self, P):
        """Base change to the residue field k(P) (characteristic 0)."""
        if self.p != 0:
            raise CurveError(["residue-field base change is implemented in characteristic 0"])
        C = Curve(self.m, self.n, self.base, ambient=self.ambient, galois=self.stabilizer(P), check=False)
        return C

    def rational_point(self, P):
        """The point P (a conjugate of it) as a closed point of this curve."""
        return self.point(P.y, P.t, P.field)


def _solve_in_basis(F, basis, v):
    """Coordinates over F_p of v in the span of ``basis`` (elements of F)."""
    p = F.characteristic
    k = len(basis)
    n = F.absolute_degree
    rows = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    # Gaussian elimination mod p
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] % p for i in range(r, n)):
        raise CurveError(["coordinate does not lie in the residue field"])
    sol = [0] * k
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][k]
    return tuple(sol)


def hypothesis_violations(m, n, p=0):
    out = []
    if m < 2:
        out.append("m must be at least 2")
    if n < 5:
        out.append("n must be at least 5")
    if gcd(n, 6) != 1:
        out.append("gcd(n,6) must be 1")
    if gcd(m, 3) != 1:
        out.append("gcd(m,3) must be 1")
    if gcd(m, n) != 1:
        out.append("gcd(m,n) must be 1")
    if p and (m * n) % p == 0:
        out.append(f"p={p} must not divide m*n")
    return out


def make_curve(m, n, base=QQ):
    return Curve(m, n, base)


# ---------------------------------------------------------------------------
# valuations


def infinity_valuations(C: Curve):
    """(ord_inf(t), ord_inf(y)) = (-m, -n), with an internal consistency check
    that y^m / t^n - 1 = t^(-n) vanishes at infinity."""
    y, t = C.gens()
    ot, oy = ord_at_infinity(C, t), ord_at_infinity(C, y)
    # y^m - t^n reduces to 1, so y^m/t^n - 1 has valuation 0 - n*ord(t) > 0
    diff = C.reduce(y ** C.m - t ** C.n)
    assert ord_at_infinity(C, diff) - C.n * ot > 0
    assert C.m * oy == C.n * ot
    return ot, oy


def _pole_weight(C, f):
    """max(a*m + b*n) over monomials y^b t^a of the normal form of f."""
    r = C.reduce(f)
    if r.is_zero():
        raise CurveError(["function is identically zero on the curve"])
    return max(b * C.n + a * C.m for (b, a) in r.terms)


def ord_at_infinity(C, f):
    if isinstance(f, RationalFunction):
        return ord_at_infinity(C, f.num) - ord_at_infinity(C, f.den)
    return -_pole_weight(C, f)


def local_expansion(C, P, prec):
    """Series (y(s), t(s)) in a uniformizer s at the affine point P."""
    F = P.field
    one = F.one
    if P.y != F.zero:
        # s = t - t0; solve Z^m = (t0 + s)^n + 1
        ts = series.zero(F, prec)
        ts[0] = P.t
        if prec > 1:
            ts[1] = one
        rhs = series.add(F, series.power(F, ts, C.n), series.const(F, one, prec))
        coeffs = [series.scale(F, rhs, F.neg(one))] + [series.zero(F, prec)] * (C.m - 1) + \
                 [series.const(F, one, prec)]
        ys = series.newton_root(F, coeffs, P.y, prec)
        return ys, ts
    # s = y; solve Z^n = s^m - 1
    ys = series.zero(F, prec)
    if prec > 1:
        ys[1] = one
    rhs = series.sub(F, series.power(F, ys, C.m), series.const(F, one, prec))
    coeffs = [series.scale(F, rhs, F.neg(one))] + [series.zero(F, prec)] * (C.n - 1) + \
             [series.const(F, one, prec)]
    ts = series.newton_root(F, coeffs, P.t, prec)
    return ys, ts


def _coeff_embedder(C, P):
    F = P.field
    if F == C.coeff_field:
        return lambda c: c
    return F.from_int  # prime field coefficients into F_{p^d}


def order_of_vanishing(C: Curve, f, P: ClosedPoint) -> int:
    """Exact valuation of a polynomial or rational function at a closed point."""
    if isinstance(f, RationalFunction):
        return order_of_vanishing(C, f.num, P) - order_of_vanishing(C, f.den, P)
    if P.is_infinity:
        return ord_at_infinity(C, f)
    bound = _pole_weight(C, f)
    embed = _coeff_embedder(C, P)
    F = P.field
    if _evaluate(C, f, P) != F.zero:
        return 0
    ys, ts = local_expansion(C, P, bound + 1)
    s = series.substitute(F, f, {C.yvar: ys, C.tvar: ts}, embed)
    val = series.valuation(F, s)
    if val == math.inf:
        raise AssertionError("valuation exceeds the pole-order bound")  # pragma: no cover
    return val


def _evaluate(C, f, P):
    F = P.field
    embed = _coeff_embedder(C, P)
    acc = F.zero
    for (b, a), c in f.terms.items():
        acc = F.add(acc, F.mul(embed(c), F.mul(F.pow(P.y, b), F.pow(P.t, a))))
    return acc


# ---------------------------------------------------------------------------
# special points and zeros of functions


def _roots_of_unity(F, k, N):
    """zeta_N^(N/k * j) for j = 0..k-1 in the ambient cyclotomic field."""
    step = N // k
    return [F.zeta_power(step * j) for j in range(k)]


def _geometric_S(C):
    """Geometric points of S (y = 0 or t = 0) in characteristic 0."""
    F = C.ambient
    N = F.conductor
    pts = []
    for z in _roots_of_unity(F, C.n, N):
        pts.append((F.zero, F.neg(z)))
    for z in _roots_of_unity(F, C.m, N):
        pts.append((z, F.zero))
    return pts


def _points_from_factors(C, factors, coord):
    """Closed points over F_p with one coordinate zero and the other a root
    of one of the irreducible ``factors``."""
    out = []
    for h, _ in factors:
        d = len(h) - 1
        K = finite_field(C.p, d)
        hk = [K.from_int(c) for c in h]
        r = roots_dense(K, hk)[0]
        if coord == "t":
            out.append(C.point(K.zero, r, K))
        else:
            out.append(C.point(r, K.zero, K))
    return out


def special_set_S(C: Curve):
    """Closed points with y = 0 or t = 0, plus infinity, sorted canonically."""
    pts = set()
    if C.p == 0:
        for y, t in _geometric_S(C):
            pts.add(C.point(y, t))
    else:
        _require_prime_base(C)
        Fp = C.base
        _, ft = factor_dense(Fp, [Fp.one] + [Fp.zero] * (C.n - 1) + [Fp.one])
        _, fy = factor_dense(Fp, [Fp.neg(Fp.one)] + [Fp.zero] * (C.m - 1) + [Fp.one])
        pts.update(_points_from_factors(C, ft, "t"))
        pts.update(_points_from_factors(C, fy, "y"))
    pts.add(INFINITY)
    return sorted(pts, key=lambda P: P.sort_key())


def _require_prime_base(C):
    if C.base.degree != 1:
        raise CurveError(["divisor computations over F_q need a prime base field"])


def _y_equation(C, K, cy, t0):
    """gcd of y^m - (t0^n + 1) and g(y, t0) over K."""
    c = K.add(K.pow(t0, C.n), K.one)
    ypoly = [K.neg(c)] + [K.zero] * (C.m - 1) + [K.one]
    gy = [K.zero] * (max(cy) + 1)
    for b, coef in cy.items():
        val = K.zero
        for (_, a), cc in coef.terms.items():
            val = K.add(val, K.mul(K.from_int(cc), K.pow(t0, a)))
        gy[b] = val
    gy = dense.trim(K, gy)
    return dense.gcd(K, ypoly, gy) if gy else ypoly


def _affine_zeros_fp(C, f):
    """All affine zeros of a nonzero polynomial function over F_p."""
    Fp = C.base
    g = C.reduce(f)
    R = resultant(g, C.equation(), C.yvar)
    if R.is_zero():
        raise CurveError(["function vanishes identically on the curve"])
    if R.is_constant():
        return set()
    _, facs = factor_dense(Fp, R.to_upoly(C.tvar).c)
    cy = g.coeffs_in(C.yvar)
    found = set()
    for h, _ in facs:
        k = len(h) - 1
        # every closed point over h(t) = 0 has a representative with t = t0
        K = finite_field(C.p, k)
        t0 = one_root(K, [K.from_int(c) for c in h], splits=True)
        common = _y_equation(C, K, cy, t0)
        _, yfacs = factor_dense(K, common)
        for q, _ in yfacs:
            e = len(q) - 1
            if e == 1:
                found.add(C.point(K.neg(q[0]), t0, K))
                continue
            L = finite_field(C.p, k * e)
            tL = one_root(L, [L.from_int(c) for c in h], splits=True)
            for y0 in roots_dense(L, _y_equation(C, L, cy, tL)):
                if len(C._orbit(L, y0, tL)) == k * e:
                    found.add(C.point(y0, tL, L))
    return found


def _zero_divisor(C, f, candidates):
    """Zeros (with multiplicity) of a polynomial function, plus its pole at inf."""
    pole = _pole_weight(C, f)
    terms = {INFINITY: -pole}
    if C.p:
        _require_prime_base(C)
        cands = _affine_zeros_fp(C, f)
    else:
        cands = candidates
    total = 0
    for P in cands:
        if P.is_infinity:
            continue
        k = order_of_vanishing(C, f, P)
        if k:
            terms[P] = terms.get(P, 0) + k
            total += k * P.degree
    if total != pole:
        raise CurveError([f"zeros of {f} not covered by the candidate points "
                          f"(found degree {total}, pole order {pole})"])
    return DivisorOnCurve(terms)


def principal_divisor(C: Curve, f, candidates=None) -> DivisorOnCurve:
    """div(f) for a polynomial or rational function in (y, t).

    Over F_p all zeros are located by elimination and root finding.  In
    characteristic 0 zeros are searched among ``candidates`` (default: the
    set S); completeness is certified by comparing their total degree with
    the pole order at infinity.
    """
    if isinstance(f, Poly):
        f = RationalFunction(f)
    if C.p == 0:
        cands = set(candidates) if candidates is not None else set(special_set_S(C))
        cands = {C.rational_point(P) if not P.is_infinity else P for P in cands}
    else:
        cands = None
    num = _zero_divisor(C, f.num, cands)
    den = _zero_divisor(C, f.den, cands) if not f.den.is_constant() else DivisorOnCurve()
    return num - den


# ---------------------------------------------------------------------------
# point counting and the Frobenius characteristic polynomial


def count_points(C: Curve) -> int:
    """Number of F_q-rational points, including the single point at infinity."""
    F = C.base
    if not F.is_finite:
        raise CurveError(["point counting needs a finite base field"])
    q = F.order
    g = gcd(C.m, q - 1)
    gen = primitive_element(F)
    powers = [F.one]
    for _ in range(q - 2):
        powers.append(F.mul(powers[-1], gen))
    log = {v: i for i, v in enumerate(powers)}
    count = 1 + g  # infinity and t = 0
    for i in range(q - 1):
        c = F.add(powers[(C.n * i) % (q - 1)], F.one)
        if c == F.zero:
            count += 1
        elif log[c] % g == 0:
            count += g
    return count


def _count_over(m, n, p, k):
    return count_points(Curve(m, n, finite_field(p, k)))


def frobenius_charpoly(C: Curve, p: int, verify_through=None) -> UPoly:
    """P(T) = det(T - Frobenius | Tate module) of the reduction at p.

    Built from counts over F_{p^k}, k = 1..g, and the functional equation;
    the counts for k = g+1 .. ``verify_through`` (default 2g) are checked
    against the power sums of the roots.
    """
    m, n, g = C.m, C.n, C.genus
    if not isprime(p) or (m * n) % p == 0:
        raise CurveError([f"p={p} must be a prime not dividing m*n"])
    if g > 4:
        raise CurveError([f"genus {g} too large for counting (limit 4)"])
    top = verify_through if verify_through is not None else 2 * g
    counts = {k: _count_over(m, n, p, k) for k in range(1, max(g, top) + 1)}
    s = {k: p ** k + 1 - counts[k] for k in counts}
    e = [1]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i] for i in range(1, k + 1))
        if acc % k:
            raise CurveError(["point counts give non-integral symmetric functions"])
        e.append(acc // k)
    full = e + [p ** (g - k) * e[k] for k in range(g - 1, -1, -1)]
    psums = _power_sums(full, top)
    for k in range(g + 1, top + 1):
        if psums[k] != s[k]:
            raise CurveError([f"count over F_{p}^{k} violates the functional equation"])
    coeffs = [Fraction((-1) ** k * full[k]) for k in range(2 * g, -1, -1)]
    return UPoly(QQ, coeffs, "T")


def _power_sums(e, top):
    """Power sums p_1..p_top of the roots from elementary symmetric e_0..e_d."""
    def ek(i):
        return e[i] if i < len(e) else 0

    ps = [None]
    for k in range(1, top + 1):
        val = sum((-1) ** (i - 1) * ek(i) * ps[k - i] for i in range(1, k))
        val += (-1) ** (k - 1) * k * ek(k)
        ps.append(val)
    return ps


def reduce_mod_p(C: Curve, p: int, witness=False):
    """Reduction of a curve over QQ at a prime of good reduction.

    With ``witness=True`` and m = 2, p = 3 also returns the change of
    variables w = -y - 1 identifying C_3 with t^n = w(w - 1), verified as a
    polynomial identity over F_3.
    """
    if C.base != QQ:
        raise CurveError(["reduction is defined for curves over QQ"])
    if not isprime(p) or (C.m * C.n) % p == 0:
        raise CurveError([f"p={p} is a bad prime (must not divide m*n)"])
    Fp = prime_field(p)
    # discriminant of t^n + 1 is +-n^n: a unit exactly when p does not divide n
    f = UPoly(QQ, [Fraction(1)] + [Fraction(0)] * (C.n - 1) + [Fraction(1)], "t")
    t, = Poly.gens(QQ, ("t",))
    fp = Poly.from_upoly(f, ("t",), "t")
    disc = resultant(fp, fp.derivative("t"), "t").constant_coeff()
    assert abs(disc) == C.n ** C.n
    if Fraction(disc).numerator % p == 0:
        raise CurveError([f"reduction at {p} is singular"])  # pragma: no cover
    Cp = Curve(C.m, C.n, Fp)
    if not witness:
        return Cp
    if not (C.m == 2 and p == 3):
        return Cp, None
    y, t = Poly.gens(Fp, ("y", "t"))
    w = -y - 1
    lhs = t ** C.n - w * (w - 1)
    rhs = -(y ** 2 - t ** C.n - 1)
    ok = lhs == rhs
    return Cp, {"substitution": "w = -y - 1", "model": f"t^{C.n} = w*(w - 1)",
                "identity": f"{lhs.to_text()} == {rhs.to_text()}", "verified": ok}
