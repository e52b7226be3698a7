import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superk1.factor import factor_over_finite_field, is_irreducible
from superk1.fields import QQ, finite_field, prime_field
from superk1.polynomials import (Poly, PolyError, Relation, UPoly, curve_relations, eisenstein_check,
                                 normal_form, padic_valuation, resultant)

from oracles import sympy_factor_mod

F3 = prime_field(3)


def up(F, coeffs):
    return UPoly.from_ints(F, coeffs)


def test_gcd_over_q():
    g = up(QQ, [-1, 0, 1]).gcd(up(QQ, [-2, 1, 1]))
    assert g == up(QQ, [-1, 1])


def test_resultant():
    x, = Poly.gens(QQ, ("x",))
    assert resultant(x ** 2 + 1, x - 2, "x").constant_coeff() == 5


def test_divmod():
    q, r = divmod(up(QQ, [0, 0, 0, 1]), up(QQ, [-1, 1]))
    assert q == up(QQ, [1, 1, 1]) and r == up(QQ, [1])


def test_normal_form_examples():
    y1, t1, y2 = Poly.gens(QQ, ("y1", "t1", "y2"))
    rels = curve_relations(QQ, ("y1", "t1", "y2"), 2, 5, 3)
    assert normal_form(y1 ** 2, rels) == t1 ** 5 + 1
    assert normal_form(y2 ** 2 - y1 ** 6, rels) == -3 * t1 ** 10 - 3 * t1 ** 5
    Y1, T1, Y2 = Poly.gens(F3, ("y1", "t1", "y2"))
    rels3 = curve_relations(F3, ("y1", "t1", "y2"), 2, 5, 3)
    assert normal_form(Y2 ** 2 - Y1 ** 6, rels3).is_zero()


def test_normal_form_second_form_agrees():
    vars = ("y1", "t1", "y2")
    y1, t1, y2 = Poly.gens(QQ, vars)
    a = normal_form(y2 ** 2, curve_relations(QQ, vars, 2, 5, 3, form="t"))
    b = normal_form(y2 ** 2, curve_relations(QQ, vars, 2, 5, 3, form="y"))
    assert normal_form(a - b, curve_relations(QQ, vars, 2, 5)).is_zero()


def test_malformed_relation():
    x, = Poly.gens(QQ, ("x",))
    with pytest.raises(PolyError):
        normal_form(x ** 3, [Relation("x", 0, x)])
    with pytest.raises(PolyError):
        normal_form(x ** 3, [Relation("x", 1, x ** 2)])


def test_factor_examples():
    lc, facs = factor_over_finite_field(up(F3, [-1, 0, 1]))
    assert lc == 1 and set(facs) == {(up(F3, [-1, 1]), 1), (up(F3, [1, 1]), 1)}
    assert is_irreducible(up(F3, [1, 0, 1]))
    _, facs = factor_over_finite_field(up(F3, [9, 0, 0, 0, 1]))
    assert facs == [(up(F3, [0, 1]), 4)]


def test_factor_t5_plus_1_mod_3_matches_sympy():
    _, facs = factor_over_finite_field(up(F3, [1, 0, 0, 0, 0, 1]))
    ours = [([int(c) for c in f.c], e) for f, e in facs]
    assert ours == sympy_factor_mod([1, 0, 0, 0, 0, 1], 3)
    assert ours == [([1, 1], 1), ([1, 2, 1, 2, 1], 1)]


@pytest.mark.parametrize("p", [2, 3, 7, 11])
def test_factor_remultiplication(p):
    rng = random.Random(1000 + p)
    F = prime_field(p)
    for _ in range(125):
        deg = rng.randint(1, 12)
        coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
        f = up(F, coeffs)
        lc, facs = factor_over_finite_field(f)
        prod = up(F, [lc])
        for h, e in facs:
            assert h.lc == 1 and is_irreducible(h)
            prod = prod * h ** e
        assert prod == f
        assert [([int(c) for c in h.c], e) for h, e in facs] == sympy_factor_mod(coeffs, p)


def test_eisenstein_classic():
    v2 = padic_valuation(2)
    assert eisenstein_check(up(QQ, [-2, 0, 1]), v2)
    assert not eisenstein_check(up(QQ, [-4, 0, 1]), v2)
    with pytest.raises(PolyError):
        eisenstein_check(up(QQ, [-2, 0, 2]), v2)


def test_padic_valuation():
    v = padic_valuation(3).valuation
    assert v(Fraction(18, 5)) == 2 and v(Fraction(5, 27)) == -3
    assert v(0) == float("inf")


small = st.integers(-4, 4)
mono = st.tuples(st.integers(0, 4), st.integers(0, 7), st.integers(0, 4), small)


def _poly(gens, terms):
    y1, t1, y2 = gens
    out = gens[0] * 0
    for a, b, c, k in terms:
        out = out + k * y1 ** a * t1 ** b * y2 ** c
    return out


@settings(max_examples=40, deadline=None)
@given(st.lists(mono, max_size=4), st.lists(mono, max_size=4))
def test_normal_form_is_a_ring_map(fa, fb):
    vars = ("y1", "t1", "y2")
    gens = Poly.gens(QQ, vars)
    rels = curve_relations(QQ, vars, 2, 5, 3)
    a, b = _poly(gens, fa), _poly(gens, fb)
    na, nb = normal_form(a, rels), normal_form(b, rels)
    assert normal_form(a * b, rels) == normal_form(na * nb, rels)
    assert normal_form(a + b, rels) == na + nb
    assert all(e[0] < 2 and e[2] < 2 for e in na.terms)


@pytest.mark.parametrize("p,coeffs", [(7, [1, 0, 3, 0, 0, 1]), (3, [1, 0, 0, 0, 0, 1]), (11, [2, 1])])
def test_one_root(p, coeffs):
    from superk1 import dense
    from superk1.factor import one_root
    k = len(coeffs) - 1
    K = finite_field(p, k)
    f = [K.from_int(c) for c in coeffs]
    r = one_root(K, f)
    assert dense.evaluate(K, f, r) == K.zero
