import pytest

from superk1.correspondence import (ComponentLabel, CorrespondenceError, build_D, check_infinity_support,
                                    decompose_D_mod_p, irreducibility_mod_l, ord_g_along_components)
from superk1.curve import CurveError, make_curve
from superk1.fields import prime_field

from oracles import GF, sympy_factor_mod

GRID = [(2, 5), (2, 7), (4, 5), (4, 7), (5, 7)]
ELLS = [7, 11, 13, 17, 19, 23]


@pytest.fixture(scope="module")
def D25():
    return build_D(make_curve(2, 5), 3)


def test_generators(D25):
    assert [g.to_text() for g in D25.generators] == ["-t1^5 + y1^2 - 1", "-t1^15 + y2^2 - 1"]
    assert D25.alt_generator.to_text() == "-y1^6 + 3*y1^4 - 3*y1^2 + y2^2"
    D47 = build_D(make_curve(4, 7), 3)
    assert [g.to_text() for g in D47.generators] == ["-t1^7 + y1^4 - 1", "-t1^21 + y2^4 - 1"]


def test_reduction_commutes_with_construction(D25):
    for l in (7, 11):
        direct = build_D(make_curve(2, 5, prime_field(l)), 3)
        assert D25.reduce_mod(l).generators == direct.generators


def test_bad_reduction_rejected(D25):
    with pytest.raises((CorrespondenceError, CurveError)):
        D25.reduce_mod(5)
    with pytest.raises(CorrespondenceError):
        build_D(make_curve(2, 5, prime_field(3)), 3)


@pytest.mark.parametrize("m,n", GRID)
def test_infinity_support(m, n):
    cert = check_infinity_support(build_D(make_curve(m, n), 3))
    assert cert["holds"] and cert["ord_inf_t"] == -m and cert["ord_inf_y"] == -n
    assert cert["F_preimage_of_inf"] == ["inf"]
    assert len(cert["chain"]) == 2


KAPPA = {(2, 5): 3, (2, 7): 3, (4, 5): 9, (4, 7): 9, (5, 7): 81}


@pytest.mark.parametrize("m,n", GRID)
def test_decomposition_mod_3(m, n):
    dec = decompose_D_mod_p(build_D(make_curve(m, n), 3))
    assert len(dec) == m
    assert dec.kappa.order == KAPPA[(m, n)]
    assert [e for _, e in dec] == [1] * m
    assert [c.j for c, _ in dec] == list(range(m))
    assert dec.certificate["normal_form"] == f"2*t1^{3 * n} + t2^{n}"
    assert dec.certificate["divisor"] == "2*t1^3 + t2"


def test_decomposition_labels(D25):
    dec = decompose_D_mod_p(D25)
    assert [c.name for c, _ in dec] == ["Gamma_phi", "Gamma_-phi"]
    assert dec.xi == prime_field(3)(2)
    assert ComponentLabel(1, 2, 3).equations() == ["y2 = -y1^3", "t2 = t1^3"]


@pytest.mark.parametrize("m,n,k", [(2, 5, 2), (2, 5, 3), (4, 7, 2), (4, 5, 2)])
def test_points_of_D3_lie_on_the_twisted_graphs(m, n, k):
    # independent check over F_{3^k}: every (y1, t1, y2) on D_3 has y2 = xi^j y1^3
    F = GF(3, k)
    els = F.elements()
    one = F.one()
    for t1 in els:
        c = F.add(F.pow(t1, n), one)
        for y1 in els:
            if F.pow(y1, m) != c:
                continue
            rhs = F.add(F.pow(t1, 3 * n), one)
            sols = {y2 for y2 in els if F.pow(y2, m) == rhs}
            target = F.pow(y1, 3)
            # all m-th roots of y1^(3m) are of the form xi^j y1^3
            assert all(F.pow(s, m) == F.pow(target, m) for s in sols)
            if any(target):
                roots_of_one = {r for r in els if any(r) and F.pow(r, m) == one}
                assert sols == {F.mul(r, target) for r in roots_of_one}


@pytest.mark.parametrize("l", ELLS)
def test_irreducible_away_from_3(D25, l):
    r = irreducibility_mod_l(D25, l)
    assert r.irreducible and r.method == "both"
    assert r.eisenstein["holds"] and r.eisenstein["ord_a"] == 1
    assert r.brute_force["holds"]
    assert "2" in r.brute_force["capelli"]


@pytest.mark.parametrize("l", ELLS)
def test_independent_non_square_witness(l):
    # a = (y^2 - 1)^3 + 1 = t^15 + 1 on C_l: a point over F_{l^2} where a is a nonzero non-square
    F = GF(l, 2)
    els = F.elements()
    one = F.one()
    half = (F.q - 1) // 2
    squares = {}
    for y in els:
        squares.setdefault(F.pow(y, 2), y)
    found = False
    for t in els:
        c = F.add(F.pow(t, 5), one)
        if c not in squares:
            continue
        a = F.add(F.pow(t, 15), one)
        if any(a) and F.pow(a, half) != one:
            found = True
            break
    assert found


@pytest.mark.parametrize("l", ELLS)
def test_eisenstein_point_degree_bound(D25, l):
    # a simple zero of t^15 + 1 off y = 0 is a root of t^10 - t^5 + 1
    k = min(len(f) - 1 for f, _ in sympy_factor_mod([1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1], l))
    assert irreducibility_mod_l(D25, l).eisenstein["point_degree"] <= 2 * k


def test_single_paths_agree(D25):
    assert irreducibility_mod_l(D25, 11, method="eisenstein").irreducible
    assert irreducibility_mod_l(D25, 11, method="brute-force").irreducible


@pytest.mark.parametrize("l", [3, 5, 2, 9])
def test_excluded_primes(D25, l):
    with pytest.raises(CorrespondenceError):
        irreducibility_mod_l(D25, l)


def test_unknown_method(D25):
    with pytest.raises(CorrespondenceError):
        irreducibility_mod_l(D25, 7, method="magic")


def test_ord_g_along_components(D25):
    co = ord_g_along_components(D25)
    assert {k.name: v for k, v in co.orders.items()} == {"Gamma_phi": 1, "Gamma_-phi": 0}
    assert co.certificate["normal_form"] == "-3*t1^10 - 3*t1^5"
    assert co.certificate["restrictions"]["Gamma_phi"] == "0"


def test_ord_g_m4():
    co = ord_g_along_components(build_D(make_curve(4, 7), 3))
    assert sorted(co.orders.values()) == [0, 0, 0, 1]
    assert co[ComponentLabel(0, 4, 3)] == 1
