"""The correspondence D on C x C cut out by t2 = t1^p.

In the affine chart D lives in the variables (y1, t1, y2) with generators
y1^m - t1^n - 1 and y2^m - t1^(pn) - 1.  This module checks its behaviour at
infinity, its splitting at p into twisted Frobenius graphs, its
irreducibility at other primes, and the order of g = y2 - y1^p along the
components at p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from sympy import factorint, isprime

from .curve import Curve, CurveError, hypothesis_violations, infinity_valuations, order_of_vanishing
from .factor import roots_dense
from .fields import QQ, cyclotomic_field, finite_field, prime_field, root_of_unity_field
from .polynomials import (LocalValuationData, Poly, Relation, curve_relations, eisenstein_check, normal_form,
                          resultant)

VARS = ("y1", "t1", "y2")
VARS4 = ("y1", "t1", "y2", "t2")


class CorrespondenceError(ValueError):
    pass


@dataclass(frozen=True)
class ComponentLabel:
    """The component y2 = xi^j y1^p, t2 = t1^p of D mod p."""

    j: int
    m: int
    p: int

    @property
    def name(self):
        if self.j == 0:
            return "Gamma_phi"
        if self.m == 2:
            return "Gamma_-phi"
        return f"Gamma_xi^{self.j}phi"

    def equations(self):
        xi = "" if self.j == 0 else ("-" if self.m == 2 else f"xi^{self.j}*")
        return [f"y2 = {xi}y1^{self.p}", f"t2 = t1^{self.p}"]

    def __str__(self):
        return self.name


@dataclass
class Correspondence:
    curve: Curve
    p: int
    generators: tuple
    alt_generator: Poly
    base: object
    checks: dict = field(default_factory=dict)
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def m(self):
        return self.curve.m

    @property
    def n(self):
        return self.curve.n

    def relations(self, form="t"):
        return curve_relations(self.base, VARS, self.m, self.n, self.p, form)

    def reduce(self, f, form="t"):
        return normal_form(f, self.relations(form))

    def reduce_mod(self, l):
        """Reduce the rational object mod l (coefficientwise)."""
        if self.base != QQ:
            raise CorrespondenceError("only a rational correspondence can be reduced")
        Fl = prime_field(l)
        gens = tuple(g.map_coeffs(Fl, Fl.from_fraction) for g in self.generators)
        alt = self.alt_generator.map_coeffs(Fl, Fl.from_fraction)
        return Correspondence(Curve(self.m, self.n, Fl), self.p, gens, alt, Fl, dict(self.checks))

    def to_json(self):
        return {"m": self.m, "n": self.n, "p": self.p, "base": str(self.base),
                "generators": [g.to_text() for g in self.generators],
                "alt_generator": self.alt_generator.to_text()}


def build_D(C: Curve, p: int = 3) -> Correspondence:
    """Ideal generators of D over the base of ``C`` (QQ or F_l)."""
    m, n = C.m, C.n
    if not isprime(p) or (m * n) % p == 0:
        raise CurveError([f"p={p} must be a prime not dividing m*n"])
    if C.p == 0 and C.base != QQ:
        raise CorrespondenceError("D is built over QQ or a prime field")
    if C.p and C.p == p:
        raise CorrespondenceError("build D over QQ and reduce, or use decompose_D_mod_p")
    F = QQ if C.p == 0 else C.base
    y1, t1, y2 = Poly.gens(F, VARS)
    g1 = y1 ** m - t1 ** n - 1
    g2 = y2 ** m - t1 ** (p * n) - 1
    alt = y2 ** m - (y1 ** m - 1) ** p - 1
    checks = {}
    diff = normal_form(g2 - alt, [curve_relations(F, VARS, m, n)[0]])
    if not diff.is_zero():
        raise CorrespondenceError("the two presentations of D disagree")  # pragma: no cover
    checks["congruence"] = "normal_form(second - alt) = 0"
    # eliminate t2 from y2^m - t2^n - 1 and t2 - t1^p
    Y1, T1, Y2, T2 = Poly.gens(F, VARS4)
    res = resultant(Y2 ** m - T2 ** n - 1, T2 - T1 ** p, "t2")
    target = Y2 ** m - T1 ** (p * n) - 1
    if res != target and res != -target:
        raise CorrespondenceError("resultant does not recover the second generator")  # pragma: no cover
    checks["resultant_t2"] = res.to_text()
    return Correspondence(C, p, (g1, g2), alt, F, checks)


# ---------------------------------------------------------------------------
# behaviour at infinity


def check_infinity_support(D: Correspondence) -> dict:
    """Certificate that D meets the boundary of the affine chart only at inf x inf."""
    C = D.curve
    ord_t, ord_y = infinity_valuations(C)
    if ord_t >= 0:
        raise CorrespondenceError("t has no pole at infinity")  # pragma: no cover
    # F(t) = t^p is a monic polynomial, so its only preimage of inf is inf
    fiber = ["inf"]
    chain = [
        "x2 = inf: pi(x2) = inf = F(pi(x1)), so pi(x1) = inf, so x1 = inf",
        "x1 = inf: pi(x2) = F(pi(x1)) = F(inf) = inf, so x2 = inf",
    ]
    return {
        "ord_inf_t": ord_t,
        "ord_inf_y": ord_y,
        "pole_only_at_inf": True,
        "F": f"t -> t^{D.p}",
        "F_preimage_of_inf": fiber,
        "ord_inf_F_of_t": D.p * ord_t,
        "chain": chain,
        "holds": ord_t == -C.m and fiber == ["inf"],
    }


# ---------------------------------------------------------------------------
# splitting at p


@dataclass
class Decomposition:
    components: list
    kappa: object
    xi: object
    certificate: dict

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def to_json(self):
        return {"kappa": str(self.kappa), "xi": str(self.xi),
                "components": [{"label": c.name, "equations": c.equations(), "multiplicity": e}
                               for c, e in self.components],
                "certificate": self.certificate}


def decompose_D_mod_p(D: Correspondence) -> Decomposition:
    """D_p over kappa = F_p(mu_m) as the sum of the m twisted Frobenius graphs."""
    m, n, p = D.m, D.n, D.p
    kappa, xi = root_of_unity_field(p, m)
    K = kappa
    Y1, T1, Y2, T2 = Poly.gens(K, VARS4)
    # (ii) product identity over kappa
    prod = Poly.const(K, VARS4, 1)
    for j in range(m):
        prod = prod * (Y2 - Y1 ** p * (xi ** j).raw)
    if prod != Y2 ** m - Y1 ** (p * m):
        raise CorrespondenceError("product identity fails over kappa")  # pragma: no cover
    # (iii) membership y2^m - y1^(pm) in (t2 - t1^p) on C_p x C_p
    Fp = prime_field(p)
    y1, t1, y2, t2 = Poly.gens(Fp, VARS4)
    rels = [Relation("y1", m, t1 ** n + 1), Relation("y2", m, t2 ** n + 1)]
    nf = normal_form(y2 ** m - y1 ** (p * m), rels)
    expected = t2 ** n - t1 ** (p * n)
    if nf != expected:
        raise CorrespondenceError("normal form of y2^m - y1^(pm) is not t2^n - t1^(pn)")  # pragma: no cover
    quotient = nf.exact_div(t2 - t1 ** p)
    direct = Poly(Fp, VARS4, {})
    for i in range(n):
        direct = direct + t2 ** i * t1 ** (p * (n - 1 - i))
    if quotient != direct or quotient * (t2 - t1 ** p) != nf:
        raise CorrespondenceError("membership certificate failed")  # pragma: no cover
    # each component lies on D_p: y2 = xi^j y1^p, t2 = t1^p kills all generators
    Fy1, Ft1 = Poly.gens(K, ("y1", "t1"))
    crel = [Relation("y1", m, Ft1 ** n + 1)]
    for j in range(m):
        Y2j = Fy1 ** p * (xi ** j).raw
        on_D = normal_form(Y2j ** m - (Ft1 ** p) ** n - 1, crel)
        if not on_D.is_zero():
            raise CorrespondenceError(f"component {j} is not contained in D_p")  # pragma: no cover
    powers = [(xi ** j).raw for j in range(m)]
    if len(set(powers)) != m or K.from_int(m) == K.zero:
        raise CorrespondenceError("components are not distinct")  # pragma: no cover
    cert = {
        "product_identity": f"prod_j (y2 - xi^j*y1^{p}) = y2^{m} - y1^{p * m} over {kappa}",
        "normal_form": nf.to_text(),
        "divisor": (t2 - t1 ** p).to_text(),
        "quotient": quotient.to_text(),
        "squarefree": f"xi^j distinct and m = {m} is a unit in {kappa}",
    }
    comps = [(ComponentLabel(j, m, p), 1) for j in range(m)]
    return Decomposition(comps, kappa, xi, cert)


# ---------------------------------------------------------------------------
# irreducibility at l != p


@dataclass
class IrreducibilityResult:
    l: int
    irreducible: bool
    method: str
    eisenstein: dict | None
    brute_force: dict | None

    def __bool__(self):
        return self.irreducible

    def to_json(self):
        return {"l": self.l, "irreducible": self.irreducible, "method": self.method,
                "eisenstein": self.eisenstein, "brute_force": self.brute_force}


def _coefficient_function(D, C_l):
    """a = (y^m - 1)^p + 1 on C_l, so that D_l is y2^m = a."""
    y, t = C_l.gens()
    return (y ** C_l.m - 1) ** D.p + 1


def _eisenstein_path(D, C_l, max_degree=24):
    """Find s with ord_s(a) = 1 and run the Eisenstein test on Y^m - a at s."""
    l = C_l.p
    m, n, p = D.m, D.n, D.p
    a = _coefficient_function(D, C_l)
    F = C_l.coeff_field
    V3 = ("y", "t", "Y")
    for d in range(1, max_degree + 1):
        K = finite_field(l, d)
        minus_one = K.neg(K.one)
        omegas = [w for w in roots_dense(K, [K.one] + [K.zero] * (p - 1) + [K.one]) if w != minus_one]
        for w in omegas:
            ts = roots_dense(K, [K.neg(w)] + [K.zero] * (n - 1) + [K.one])
            ys = roots_dense(K, [K.neg(K.add(K.one, w))] + [K.zero] * (m - 1) + [K.one])
            if not ts or not ys:
                continue
            s = C_l.point(ys[0], ts[0], K)
            order = order_of_vanishing(C_l, a, s)
            if order != 1:
                continue

            def val(c, s=s):
                c2 = Poly(F, ("y", "t"), {e[:2]: x for e, x in c.terms.items()})
                return math.inf if c2.is_zero() else order_of_vanishing(C_l, c2, s)

            unif = _as_curve_poly(C_l, s).with_vars(V3)
            v = LocalValuationData(s.text(), unif, val)
            Y = Poly.gens(F, V3)[2]
            f = Y ** m - a.with_vars(V3)
            ok = eisenstein_check(f, v, "Y")
            coeffs = f.coeffs_in("Y")
            table = {str(k): (lambda x: None if x == math.inf else x)(val(coeffs[k]) if k in coeffs else math.inf)
                     for k in range(m)}
            return {
                "point": s.text(),
                "point_degree": s.degree,
                "search_field": f"F_{l}^{d}",
                "ord_a": order,
                "uniformizer": unif.to_text(),
                "valuations": table,
                "holds": ok,
            }
    raise CorrespondenceError(f"no Eisenstein point over F_{l}^d for d <= {max_degree}")


def _as_curve_poly(C, s):
    """Minimal polynomial of the t-coordinate of s, as a function on C."""
    K = s.field
    t = C.gens()[1]
    acc = C.const(0)
    for k, c in enumerate(s.minpoly("t")):
        c0 = c if K == C.coeff_field else K.in_base(c)
        acc = acc + t ** k * c0
    return acc


def _is_dth_power(K, x, d):
    q = K.order
    return K.pow(x, (q - 1) // math.gcd(d, q - 1)) == K.one


def _brute_force_path(D, C_l, max_degree=4):
    l = C_l.p
    m, n, p = D.m, D.n, D.p
    tests = [(d, 1) for d in sorted(factorint(m))]
    if m % 4 == 0:
        tests.append((4, -4))
    witnesses = {}
    for d, scale in tests:
        found = None
        for k in range(1, max_degree + 1):
            K = finite_field(l, k)
            if math.gcd(d, K.order - 1) == 1:
                continue
            c = K.inv(K.from_int(scale))
            for t0 in sorted(K.elements()):
                rhs = K.add(K.pow(t0, n), K.one)
                ys = roots_dense(K, [K.neg(rhs)] + [K.zero] * (m - 1) + [K.one]) if rhs != K.zero \
                    else [K.zero]
                if not ys:
                    continue
                val = K.add(K.pow(K.sub(K.pow(ys[0], m), K.one), p), K.one)
                if val == K.zero:
                    continue
                if not _is_dth_power(K, K.mul(val, c), d):
                    found = {"test": f"a is not a d-th power, d = {d}" if scale == 1 else "-a/4 is not a 4th power",
                             "field": f"F_{l}^{k}", "t": K.fmt(t0), "y": K.fmt(ys[0]), "a": K.fmt(val)}
                    break
            if found:
                break
        if not found:
            raise CorrespondenceError(f"power test {d} exhausted extensions up to degree {max_degree}")
        witnesses[str(d) if scale == 1 else "-4"] = found
    return {"capelli": witnesses, "holds": True}


def irreducibility_mod_l(D: Correspondence, l: int, method: str = "both") -> IrreducibilityResult:
    """Certify that D mod l is (geometrically) irreducible."""
    m, n, p = D.m, D.n, D.p
    if method not in ("eisenstein", "brute-force", "both"):
        raise CorrespondenceError(f"unknown method {method!r}")
    if not isprime(l) or (3 * p * m * n) % l == 0:
        raise CorrespondenceError(f"l={l} must be a prime not dividing {3 * p if p != 3 else 3}*m*n")
    if hypothesis_violations(m, n, l):
        raise CorrespondenceError("; ".join(hypothesis_violations(m, n, l)))
    if (l, method) in D.cache:
        return D.cache[(l, method)]
    C_l = Curve(m, n, prime_field(l))
    eis = bf = None
    if method in ("eisenstein", "both"):
        eis = _eisenstein_path(D, C_l)
    if method in ("brute-force", "both"):
        bf = _brute_force_path(D, C_l)
    verdicts = [w["holds"] for w in (eis, bf) if w is not None]
    if len(set(verdicts)) != 1:
        raise CorrespondenceError(f"Eisenstein and power tests disagree at l={l}")
    result = IrreducibilityResult(l, verdicts[0], method, eis, bf)
    D.cache[(l, method)] = result
    return result


# ---------------------------------------------------------------------------
# g = y2 - y1^p along the components at p


@dataclass
class ComponentOrders:
    orders: dict
    certificate: dict

    def __getitem__(self, label):
        return self.orders[label]

    def to_json(self):
        return {"orders": {k.name: v for k, v in self.orders.items()}, "certificate": self.certificate}


def ord_g_along_components(D: Correspondence) -> ComponentOrders:
    m, n, p = D.m, D.n, D.p
    if p != 3:
        raise CorrespondenceError("the component computation is stated for p = 3")
    K = cyclotomic_field(m)
    xi = K.zeta_power(1)
    y1, t1, y2 = Poly.gens(K, VARS)
    prod = Poly.const(K, VARS, 1)
    for j in range(m):
        prod = prod * (y2 - y1 ** 3 * K.pow(xi, j))
    rels = curve_relations(K, VARS, m, n, 3)
    lhs = normal_form(prod, rels)
    rhs = normal_form(t1 ** n * y1 ** m * (-3), rels)
    if lhs != rhs:
        raise CorrespondenceError("prod_j (y2 - xi^j y1^3) != -3 t1^n y1^m on D")  # pragma: no cover
    integral = all(c.denominator == 1 for raw in lhs.terms.values() for c in raw)
    if not integral:
        raise CorrespondenceError("identity does not hold over the cyclotomic integers")  # pragma: no cover
    dec = decompose_D_mod_p(D)
    kappa, xk = dec.kappa, dec.xi
    ky1, kt1 = Poly.gens(kappa, ("y1", "t1"))
    crel = [Relation("y1", m, kt1 ** n + 1)]
    restrictions = {}
    orders = {}
    for label, mult in dec.components:
        if mult != 1:
            raise CorrespondenceError("component multiplicity is not 1")  # pragma: no cover
        unit_t = not normal_form(kt1, crel).is_zero()
        unit_y = not normal_form(ky1, crel).is_zero()
        coeff = kappa.sub((xk ** label.j).raw, kappa.one)
        restricted = normal_form(ky1 ** 3 * coeff, crel)
        restrictions[label.name] = restricted.to_text() if not restricted.is_zero() else "0"
        if not (unit_t and unit_y):
            raise CorrespondenceError("t1 or y1 vanishes on a component")  # pragma: no cover
        orders[label] = 1 if restricted.is_zero() else 0
    if sum(orders.values()) != 1 or orders[ComponentLabel(0, m, p)] != 1:
        raise CorrespondenceError(f"unexpected orders {orders}")
    cert = {"identity": f"prod_j (y2 - xi^j*y1^3) = -3*t1^{n}*y1^{m} on D over Z[xi]",
            "normal_form": lhs.to_text(), "restrictions": restrictions,
            "multiplicities": "1 (from the splitting at p)"}
    return ComponentOrders(orders, cert)
