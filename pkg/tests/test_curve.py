import random

import pytest
import sympy as sp
from hypothesis import assume, given, settings, strategies as st

from superk1.curve import (INFINITY, Curve, CurveError, RationalFunction, count_points, frobenius_charpoly,
                           infinity_valuations, make_curve, ord_at_infinity, order_of_vanishing,
                           principal_divisor, reduce_mod_p, special_set_S)
from superk1.fields import cyclotomic_field, finite_field, prime_field

from oracles import charpoly_from_counts, naive_count, series_order

# [DERIVED] frozen from tests/oracles.py (brute-force counts + Newton identities)
FROZEN_CHARPOLY = {
    3: [9, 0, 0, 0, 1],
    7: [49, 0, 0, 0, 1],
    11: [121, -44, 6, -4, 1],
    13: [169, 0, 0, 0, 1],
}
FROZEN_COUNTS_F3 = [4, 10, 28, 118]


def test_genus_and_hypotheses():
    assert make_curve(2, 5).genus == 2
    assert make_curve(4, 7).genus == 9
    with pytest.raises(CurveError, match="gcd"):
        make_curve(2, 6)
    with pytest.raises(CurveError, match=r"gcd\(m,3\)"):
        Curve(3, 5, prime_field(3))
    with pytest.raises(CurveError, match="must not divide"):
        Curve(2, 5, prime_field(5))


@pytest.mark.parametrize("m,n", [(2, 5), (4, 7), (2, 7), (5, 7)])
def test_infinity_valuations(m, n):
    assert infinity_valuations(make_curve(m, n)) == (-m, -n)


def test_special_set_over_q():
    C = make_curve(2, 5)
    S = special_set_S(C)
    assert len(S) == 5
    assert sorted(P.degree for P in S) == [1, 1, 1, 1, 4]
    coords = {(P.y, P.t) for P in S if P.degree == 1 and not P.is_infinity}
    F = C.coeff_field
    assert coords == {(F(1).raw, F(0).raw), (F(-1).raw, F(0).raw), (F(0).raw, F(-1).raw)}
    assert INFINITY in S


def test_special_set_over_cyclotomic_splits_orbit():
    S = special_set_S(Curve(2, 5, cyclotomic_field(5)))
    assert len(S) == 8 and all(P.degree == 1 for P in S)


def test_special_set_over_f3():
    S = special_set_S(make_curve(2, 5, prime_field(3)))
    assert sorted(P.degree for P in S) == [1, 1, 1, 1, 4]


@pytest.mark.parametrize("p", [3, 7, 11, 13])
@pytest.mark.parametrize("k", [1, 2])
def test_counts_against_enumeration(p, k):
    assert count_points(Curve(2, 5, finite_field(p, k))) == naive_count(2, 5, p, k)


def test_counts_f3_frozen():
    ours = [count_points(Curve(2, 5, finite_field(3, k))) for k in range(1, 5)]
    assert ours == FROZEN_COUNTS_F3 == [naive_count(2, 5, 3, k) for k in range(1, 5)]


@pytest.mark.parametrize("m,n,p,k", [(4, 7, 5, 2), (2, 7, 3, 3), (5, 7, 2, 3), (4, 5, 7, 1)])
def test_counts_other_curves(m, n, p, k):
    assert count_points(Curve(m, n, finite_field(p, k))) == naive_count(m, n, p, k)


def _coeffs(P):
    return [int(c) for c in P.c]


def test_charpoly_at_3_is_t4_plus_9():
    # published value: the reduction at 3 has characteristic polynomial T^4 + 9
    P = frobenius_charpoly(make_curve(2, 5), 3)
    assert P.to_text() == "T^4 + 9"
    assert P(1) == 10


@pytest.mark.parametrize("p", sorted(FROZEN_CHARPOLY))
def test_charpoly_frozen_and_oracle(p):
    P = frobenius_charpoly(make_curve(2, 5), p)
    assert _coeffs(P) == FROZEN_CHARPOLY[p]
    T = sp.Symbol("T")
    oracle = charpoly_from_counts(p, [naive_count(2, 5, p, k) for k in (1, 2)])
    assert [int(c) for c in reversed(sp.Poly(oracle, T).all_coeffs())] == FROZEN_CHARPOLY[p]


def test_charpoly_genus_three():
    P = frobenius_charpoly(make_curve(2, 7), 5)
    T = sp.Symbol("T")
    oracle = charpoly_from_counts(5, [naive_count(2, 7, 5, k) for k in (1, 2, 3)])
    assert _coeffs(P) == [int(c) for c in reversed(sp.Poly(oracle, T).all_coeffs())]


def test_charpoly_errors():
    with pytest.raises(CurveError):
        frobenius_charpoly(make_curve(2, 5), 5)
    with pytest.raises(CurveError, match="genus"):
        frobenius_charpoly(make_curve(4, 7), 3)


def test_reduce_mod_p():
    C = make_curve(2, 5)
    Cp, w = reduce_mod_p(C, 3, witness=True)
    assert Cp.base == prime_field(3) and w["verified"] and w["model"] == "t^5 = w*(w - 1)"
    assert reduce_mod_p(C, 7).genus == 2
    with pytest.raises(CurveError):
        reduce_mod_p(C, 5)


def test_principal_divisor_examples():
    C = make_curve(2, 5)
    y, t = C.gens()
    F = C.coeff_field
    pt = {(P.y, P.t): P for P in special_set_S(C) if not P.is_infinity and P.degree == 1}
    W = pt[(F(0).raw, F(-1).raw)]
    orbit = next(P for P in special_set_S(C) if P.degree == 4)
    d = principal_divisor(C, t + 1)
    assert d.terms == {W: 2, INFINITY: -2}
    assert principal_divisor(C, y - 1).terms == {pt[(F(1).raw, F(0).raw)]: 5, INFINITY: -5}
    assert principal_divisor(C, y).terms == {W: 1, orbit: 1, INFINITY: -5}
    q = principal_divisor(C, RationalFunction(y * y, t + 1))
    assert q.terms == {orbit: 2, INFINITY: -8}
    assert ord_at_infinity(C, t) == -2
    with pytest.raises(CurveError, match="not covered"):
        principal_divisor(C, t - 2)


# local parametrizations at special points, built directly in sympy
s = sp.Symbol("s")
BRANCHES = {
    # (y0, t0): (y(s), t(s)) with s a uniformizer
    (1, 0): (sp.sqrt(1 + s ** 5), s),
    (-1, 0): (-sp.sqrt(1 + s ** 5), s),
    (0, -1): (s, -(1 - s ** 2) ** sp.Rational(1, 5)),
}

terms = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 4), st.integers(-3, 3)), min_size=1, max_size=4)


def _build(C, shape):
    y, t = C.gens()
    f = y * 0
    for a, b, c in shape:
        f = f + c * y ** a * t ** b
    return f


def _sympy(shape, Y, T):
    return sum(c * Y ** a * T ** b for a, b, c in shape)


@settings(max_examples=25, deadline=None)
@given(terms, st.sampled_from(sorted(BRANCHES)))
def test_order_of_vanishing_matches_series(shape, center):
    C = make_curve(2, 5)
    f = C.reduce(_build(C, shape))
    assume(not f.is_zero())
    P = C.point(*center)
    Y, T = BRANCHES[center]
    assert order_of_vanishing(C, f, P) == series_order(_sympy(shape, Y, T), s, 60)


@settings(max_examples=25, deadline=None)
@given(terms)
def test_order_at_infinity_matches_puiseux(shape):
    C = make_curve(2, 5)
    f = C.reduce(_build(C, shape))
    assume(not f.is_zero())
    # t = s^-2, y = s^-5 sqrt(1 + s^10); shift by s^K to stay in a power series
    K = 40
    expr = sp.expand(_sympy(shape, s ** -5 * sp.sqrt(1 + s ** 10), s ** -2) * s ** K)
    assert ord_at_infinity(C, f) == series_order(expr, s, 80) - K


def _random_function(C, rng):
    # a(t) + b(t) y with deg a <= 3, deg b <= 1 keeps the residue degrees small
    y, t = C.gens()
    a = sum((rng.randrange(C.p) * t ** i for i in range(4)), y * 0)
    b = sum((rng.randrange(C.p) * t ** i for i in range(2)), y * 0)
    return C.reduce(a + b * y)


@pytest.mark.parametrize("p,count,linear", [(7, 50, 15), (11, 20, 5)])
def test_random_principal_divisors_degree_zero(p, count, linear):
    C = make_curve(2, 5, prime_field(p))
    rng = random.Random(p)
    done = 0
    while done < count:
        f, g = _random_function(C, rng), _random_function(C, rng)
        if f.is_zero() or g.is_zero() or C.reduce(f * g).is_zero():
            continue
        df = principal_divisor(C, f)
        assert df.degree == 0
        if done < linear:
            dg = principal_divisor(C, g)
            assert principal_divisor(C, RationalFunction(C.reduce(f * g))) == df + dg
            assert principal_divisor(C, RationalFunction(f, g)) == df - dg
        done += 1


def test_random_s_units_over_q_degree_zero():
    C = make_curve(2, 5)
    y, t = C.gens()
    base = [t, t + 1, y - 1, y + 1, y]
    divs = [principal_divisor(C, b) for b in base]
    rng = random.Random(5)
    for _ in range(15):
        ex = [rng.randint(-3, 3) for _ in base]
        num, den = y ** 0, y ** 0
        for b, e in zip(base, ex):
            if e > 0:
                num = num * b ** e
            elif e < 0:
                den = den * b ** -e
        d = principal_divisor(C, RationalFunction(C.reduce(num), C.reduce(den)))
        assert d.degree == 0
        assert d == sum((e * dv for e, dv in zip(ex, divs)), principal_divisor(C, y ** 0))
