import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tyindicators.cyclotomic import (Cyclotomic, ScaledValue, cyclotomic_polynomial, embed_sqrt,
                                     galois_apply, is_algebraic_integer, minimal_polynomial,
                                     root_of_unity_order, to_complex)

z = Cyclotomic.zeta


def approx(x, y, tol=1e-9):
    return abs(complex(x) - complex(y)) < tol


# -- frozen values -------------------------------------------------------------

def test_basic_relations():
    assert z(4) * z(4) == -1
    assert 1 + z(3) + z(3, 2) == 0
    assert z(8).inverse() == z(8, 7)
    assert z(12, 3) == z(4)


def test_embed_sqrt_values():
    gauss5 = Cyclotomic.from_counts(5, [1, 2, 0, 0, 2])  # sum of zeta_5^(i^2)
    assert embed_sqrt(5) == gauss5
    assert embed_sqrt(1) == 1
    assert embed_sqrt(4) == 2
    for m in (2, 3, 6, 8, 12, 18, 45):
        assert embed_sqrt(m) ** 2 == m
        assert approx(embed_sqrt(m).to_complex(), m ** 0.5)


def test_galois_apply():
    assert galois_apply(z(5), 2) == z(5, 2)
    assert galois_apply(embed_sqrt(5), 2) == -embed_sqrt(5)
    x = 3 + z(7, 2)
    assert galois_apply(x, 1) == x
    with pytest.raises(ValueError):
        galois_apply(z(6), 3)


def test_root_of_unity_order():
    assert root_of_unity_order((1 + z(4)) / embed_sqrt(2)) == 8
    assert root_of_unity_order(Cyclotomic.rational(-1)) == 2
    assert root_of_unity_order(Cyclotomic.rational(2)) is None
    assert root_of_unity_order(Cyclotomic.rational(0)) is None
    assert root_of_unity_order(-z(3)) == 6


def test_minimal_polynomial():
    s3 = embed_sqrt(3)
    # coefficients run from the constant term up
    assert minimal_polynomial(1 + s3) == [-2, -2, 1]
    assert minimal_polynomial((1 + s3) / 2) == [Fraction(-1, 2), -1, 1]
    assert minimal_polynomial(Cyclotomic.rational(-1)) == [1, 1]
    assert minimal_polynomial(z(5)) == [1, 1, 1, 1, 1]


def test_algebraic_integers():
    s3 = embed_sqrt(3)
    assert is_algebraic_integer(1 + s3)
    assert not is_algebraic_integer((1 + s3) / 2)
    assert is_algebraic_integer(Cyclotomic.rational(7))
    assert is_algebraic_integer((1 + embed_sqrt(5)) / 2)


def test_to_complex():
    assert to_complex(z(4)) == pytest.approx(1j)
    assert to_complex(embed_sqrt(5)) == pytest.approx(5 ** 0.5)
    assert to_complex(ScaledValue(1, 4, 1)) == pytest.approx(0.5)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_scaled_value_equality_and_render():
    a = ScaledValue(3, 3, 1)          # 3 / sqrt 3
    assert a == embed_sqrt(3)
    assert a.render() == ScaledValue(embed_sqrt(3)).render()
    assert ScaledValue(1, 4, 1) == Fraction(1, 2)
    assert ScaledValue(-1 - 2 * z(3), 3, 1).render() == "-z4"
    assert ScaledValue(z(8)).render() == "1+z4|sqrt(2)^-1"
    assert ScaledValue(1, 2, -3).render() == ScaledValue(2 * embed_sqrt(2)).render()
    assert ScaledValue(2, 2, 1) * ScaledValue(2, 2, 1) == 2
    assert hash(ScaledValue(2, 4, 2)) == hash(ScaledValue(Fraction(1, 2)))


def test_bad_base():
    with pytest.raises(ValueError):
        ScaledValue(1, 0, 1)


# -- properties -----------------------------------------------------------------

conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16, 24])


@st.composite
def elements(draw):
    L = draw(conductors)
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=L, max_size=L))
    den = draw(st.integers(1, 3))
    return Cyclotomic(L, [Fraction(c, den) for c in coeffs])


@given(elements(), elements(), elements())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(elements())
def test_render_depends_only_on_value(a):
    for B in (2, 3, 5):
        assert ScaledValue(a * embed_sqrt(B), B, 1).render() == ScaledValue(a).render()


@given(elements(), elements())
def test_complex_embedding_is_a_homomorphism(a, b):
    assert approx((a * b).to_complex(), a.to_complex() * b.to_complex(), 1e-6)
    assert approx((a + b).to_complex(), a.to_complex() + b.to_complex(), 1e-6)


@given(elements())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(elements(), elements(), st.sampled_from([1, 7, 11, 13, 17]))
def test_galois_is_a_field_automorphism(a, b, s):
    L = 720
    assert galois_apply(a * b, s) == galois_apply(a, s) * galois_apply(b, s)
    assert galois_apply(a + b, s) == galois_apply(a, s) + galois_apply(b, s)
    assert (a.embed(L)).galois(s) == galois_apply(a, s)


@given(elements())
def test_minimal_polynomial_annihilates(a):
    poly = minimal_polynomial(a)
    value = Cyclotomic.rational(0)
    for c in reversed(poly):
        value = value * a + c
    assert value == 0
    assert poly[-1] == 1


@given(st.integers(1, 40), st.integers(-50, 50))
def test_root_orders(L, k):
    x = z(L, k)
    order = root_of_unity_order(x)
    assert order == L // math.gcd(L, k)
    assert approx(x.to_complex(), cmath.exp(2j * cmath.pi * k / L))


@given(st.integers(1, 60))
def test_embed_sqrt_squares(m):
    assert embed_sqrt(m) ** 2 == m
