from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superk1.fields import (QQ, FieldError, cyclotomic_field, finite_field, frobenius_map, make_field,
                            prime_field, root_of_unity_field)

from oracles import sympy_cyclotomic


def test_prime_field_basics():
    F3 = prime_field(3)
    assert F3(2) * F3(2) == F3(1)
    assert F3(2).inverse() == F3(2)
    assert F3(1) - F3(2) == F3(2)
    with pytest.raises(ZeroDivisionError):
        F3(1) / F3(0)


def test_rationals():
    a = QQ(Fraction(2, 3))
    assert a * QQ(Fraction(3, 2)) == QQ(1)
    assert (a ** -2) == QQ(Fraction(9, 4))


def test_cyclotomic_five():
    K = cyclotomic_field(5)
    z = K.gen()
    assert K.degree == 4
    assert z ** 5 == K(1)
    assert z ** 4 + z ** 3 + z ** 2 + z + 1 == K(0)
    assert z * z.inverse() == K(1)


@pytest.mark.parametrize("N", [3, 4, 5, 7, 8, 10, 12, 20, 35])
def test_cyclotomic_modulus_matches_sympy(N):
    K = cyclotomic_field(N)
    assert [int(c) for c in K.modulus] == sympy_cyclotomic(N)


def test_f9_and_frobenius():
    F9 = finite_field(3, 2)
    u = F9.gen()
    assert tuple(F9.modulus) == (1, 0, 1)
    assert u * u == F9(-1)
    assert frobenius_map(u) == -u
    assert frobenius_map(frobenius_map(u)) == u


def test_root_of_unity_field():
    F, xi = root_of_unity_field(3, 2)
    assert F == prime_field(3) and xi == F(2)
    F4, xi4 = root_of_unity_field(3, 4)
    assert F4.order == 9 and xi4 ** 4 == F4(1) and xi4 ** 2 != F4(1)
    F5, xi5 = root_of_unity_field(3, 5)
    assert F5.order == 81 and xi5 ** 5 == F5(1) and xi5 != F5(1)


def test_make_field_and_errors():
    assert make_field("prime", 3) == prime_field(3)
    assert make_field("rational") == QQ
    assert make_field("cyclotomic", 5).degree == 4
    assert make_field("extension", 3, [1, 0, 1]).order == 9
    with pytest.raises(FieldError):
        make_field("prime", 4)
    with pytest.raises(FieldError):
        finite_field(3, 2, modulus=(1, 0, 0))
    with pytest.raises(FieldError):
        make_field("bogus")
    with pytest.raises(FieldError):
        prime_field(3)(1) + finite_field(3, 2)(1)


FIELDS = [(3, 1), (3, 2), (3, 4), (7, 1), (7, 2), (11, 1), (5, 3)]


def _elements(p, k):
    F = finite_field(p, k)
    coords = st.lists(st.integers(0, p - 1), min_size=k, max_size=k)
    return F, coords.map(lambda c: F(c[0]) if k == 1 else F(tuple(c)))


@pytest.mark.parametrize("p,k", FIELDS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_fermat_and_freshman(p, k, data):
    F, elems = _elements(p, k)
    a, b = data.draw(elems), data.draw(elems)
    q = p ** k
    if not a.is_zero():
        assert a ** (q - 1) == F(1)
        assert a * a.inverse() == F(1)
    assert (a + b) ** p == a ** p + b ** p
    assert frobenius_map(a * b) == frobenius_map(a) * frobenius_map(b)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=4, max_size=4),
       st.lists(st.integers(-20, 20), min_size=4, max_size=4))
def test_cyclotomic_field_axioms(ca, cb):
    K = cyclotomic_field(5)
    z = K.gen()
    a = sum((c * z ** i for i, c in enumerate(ca)), K(0))
    b = sum((c * z ** i for i, c in enumerate(cb)), K(0))
    assert (a + b) * b == a * b + b * b
    if not b.is_zero():
        assert (a / b) * b == a
