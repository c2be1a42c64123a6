from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tyindicators.abelian import AbelianGroup
from tyindicators.cyclotomic import Cyclotomic, ScaledValue, embed_sqrt
from tyindicators.errors import BoundExceeded, NotSquare, SpecError
from tyindicators.pmg import Bicharacter, direct_product
from tyindicators.tycat import ROUTES, TYCategory, xi_invariant
from tyindicators.verify import default_categories

z = Cyclotomic.zeta
Z3 = Bicharacter.cyclic(3, 1)


def ty(chi, tau):
    return TYCategory(chi, tau)


def test_construction_errors():
    with pytest.raises(SpecError):
        ty(Bicharacter.trivial(AbelianGroup([2])), 1)
    with pytest.raises(SpecError):
        ty(Z3, 0)
    with pytest.raises(SpecError):
        ty(Bicharacter(AbelianGroup([4, 4]), [[0, 1], [0, 0]]), 1)


def test_invertible_indicators():
    C = ty(Bicharacter.cyclic(4, 1), 1)
    assert all(C.nu_invertible((0,), n) == 1 for n in range(1, 9))
    assert C.nu_invertible((2,), 2) == 1
    assert C.nu_invertible((1,), 2) == 0


def test_nu_m_frozen():
    for C in default_categories()[:12]:
        assert C.nu_m(3) == 0 and C.nu_m(5) == 0
        assert C.nu_m(2) == C.tau_sign
    sym = ty(Bicharacter.sym(2), 1)
    assert [sym.nu_m(n) for n in (4, 6, 8)] == [0, 1, 2]
    alt = ty(Bicharacter.alt(2), -1)
    assert [alt.nu_m(n) for n in (2, 4, 6)] == [-1, 2, -1]
    assert ty(Z3, 1).nu_m(4) == -z(4)


def test_routes_agree_on_small_cases():
    for C in (ty(Z3, 1), ty(Bicharacter.cyclic(8, 3), -1), ty(Bicharacter.hyperbolic(4, 1), -1)):
        for n in range(2, 11, 2):
            values = {C.nu_m(n, r).render() for r in ROUTES + ("izumi",)}
            assert len(values) == 1


def test_closed_route_bound():
    C = ty(Bicharacter.hyperbolic(4, 1), 1)
    with pytest.raises(BoundExceeded):
        C.nu_m(8, "closed", bound=1000)


def test_center_z2():
    C = ty(Bicharacter.cyclic(2, 1), 1)
    simples = C.center_simples()
    assert len(simples) == 9
    assert [s.kind for s in simples].count("Z") == 4
    total = sum((s.pdim * s.pdim).to_cyclotomic() for s in simples)
    assert total == 4 * C.order ** 2


def test_center_z_twists():
    for C in default_categories()[:16]:
        for s in C.center_simples():
            if s.kind == "Z":
                rho = C.lifts[s.label[0]]
                hat0 = sum((rho(a) for a in C.group.elements), Cyclotomic.rational(0))
                assert s.twist ** 2 == ScaledValue(hat0 * C.tau_sign, C.order, 1)
                assert s.twist.root_of_unity_order() is not None


def test_nu_via_center():
    C = ty(Bicharacter.sym(2), 1)
    assert C.nu_via_center("m", 3) == 0
    assert C.nu_via_center("m", 4) == 0
    assert all(C.nu_via_center((0, 0), n) == 1 for n in range(1, 7))


def test_nu_category_frozen():
    sym = ty(Bicharacter.sym(2), 1)
    assert [sym.nu_category(n) for n in (2, 4, 8)] == [6, 4, 8]
    C = ty(Bicharacter.diag(3, [1, 1]), 1)
    assert C.nu_category(2) == 4
    for C in default_categories()[:10]:
        for n in (1, 3, 5, 7):
            assert C.nu_category(n) == len(C.group.torsion(n))


def test_decompose():
    r, xi = ty(Z3, 1).nu_category_decompose(1)
    assert (r, xi) == (0, 1)
    assert ty(Z3, 1).nu_category(2) == 1 + embed_sqrt(3)
    assert ty(Bicharacter.cyclic(2, 1), 1).nu_category_decompose(1)[0] == 1
    for C in default_categories():
        if C.order % 2:
            assert all(C.nu_category_decompose(k)[0] == 0 for k in range(1, 4))


def test_certificates():
    cert = ty(Bicharacter.cyclic(2, 1), -1).arithmetic_certificate(2)
    assert cert.xi == 0 and cert.vanishes
    cert = ty(Z3, 1).arithmetic_certificate(2)
    assert cert.xi == -z(4) and cert.xi_square_sign == -1
    c8 = ty(Bicharacter.cyclic(8, -1), 1)
    assert c8.arithmetic_certificate(2).xi_order == 8


def test_xi_invariant():
    assert xi_invariant(Bicharacter.trivial(AbelianGroup([])), 2) == 1
    assert xi_invariant(Bicharacter.cyclic(8, -1), 2) == z(8)
    a, b = Bicharacter.cyclic(3, 1), Bicharacter.cyclic(5, 2)
    for k in (1, 2, 3):
        assert xi_invariant(direct_product(a, b), k) == xi_invariant(a, k) * xi_invariant(b, k)


def test_frobenius():
    assert all(ty(Bicharacter.cyclic(5, c), t).frobenius_check().values() for c in (1, 2) for t in (1, -1))
    report = ty(Z3, 1).frobenius_check()
    assert report[2] is False
    half = ty(Z3, 1).nu_category(2).to_cyclotomic() / 2
    assert half.minimal_polynomial() == [Fraction(-1, 2), -1, 1]
    triv = ty(Bicharacter.trivial(AbelianGroup([])), 1)
    assert all(triv.frobenius_check().values())


def test_trace_antipode():
    assert ty(Bicharacter.hyperbolic(4, 1), -1).trace_antipode() == 0
    assert ty(Bicharacter.sym(2), 1).trace_antipode() == 6
    assert ty(Z3, 1).trace_antipode() == 1 + embed_sqrt(3)


def test_fiber_functors():
    ws = ty(Bicharacter.hyperbolic(4, 1), -1).fiber_functor_search(bound=200)
    assert ws
    # sigma(a1, a2) = (-a1, a2) is among the witnesses
    assert any(w.sigma.images == ((3, 0), (0, 1)) for w in ws)
    for w in ws:
        assert w.rho.is_sign_valued()
    assert ty(Bicharacter.sym(2), 1).fiber_functor_search()
    with pytest.raises(NotSquare):
        ty(Z3, 1).fiber_functor_search()


def test_fiber_functor_counts_over_f2_squared():
    # B8, D8 and Q8 give fiber functors; (sym, -) is not a representation category
    counts = {(name, t): len(ty(chi, t).fiber_functor_search())
              for name, chi in (("sym", Bicharacter.sym(2)), ("alt", Bicharacter.alt(2)))
              for t in (1, -1)}
    assert counts == {("sym", 1): 1, ("sym", -1): 0, ("alt", 1): 3, ("alt", -1): 1}


@given(st.sampled_from(default_categories()), st.integers(1, 6))
def test_routes_agree_property(C, k):
    values = [C.nu_m(2 * k, r) for r in ROUTES]
    assert all(v == values[0] for v in values)


@given(st.sampled_from(default_categories()), st.integers(1, 8))
def test_nu_category_matches_center_sum(C, n):
    total = sum((C.nu_via_center(a, n) for a in C.group.elements), ScaledValue(0))
    total = total + C.nu_via_center("m", n) * C.fpdim_m
    assert total == C.nu_category(n)
