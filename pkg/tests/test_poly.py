from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_witness.poly import (
    BadPrimeError,
    BinaryForm,
    MultiPoly,
    NonHomogeneousError,
    PolySyntaxError,
    binary_gcd,
    form_exact_div,
    grevlex_key,
    monomial_basis,
    parse_poly,
    reduce_mod_p,
)

P = MultiPoly.parse
B = BinaryForm.parse


def test_ring_operations():
    assert (P("z0 + z1") * P("z0 - z1")) == P("z0^2 - z1^2")
    f = P("z0^5 + z2^3*z4^2")
    assert f + MultiPoly.zero() == f
    assert B("s + t") ** 3 == B("s^3 + 3*s^2*t + 3*s*t^2 + t^3")


def test_partial_derivatives():
    assert P("z0^2*z1").diff(0) == P("2*z0*z1")
    assert P("z3").diff(0).is_zero()
    f = P("z0^5 + z2^3*z4^2")
    euler = MultiPoly.zero()
    for i in range(5):
        euler = euler + MultiPoly.variable(i) * f.diff(i)
    assert euler == f.scale(5)


def test_parse_examples():
    g2 = parse_poly("z3^2*z4 - z2^3 - z2^2*z4")
    assert g2.terms == {(0, 0, 0, 2, 1): 1, (0, 0, 3, 0, 0): -1, (0, 0, 2, 0, 1): -1}
    assert g2.to_str() == "-z2^3 - z2^2*z4 + z3^2*z4"
    assert parse_poly("0").is_zero()
    with pytest.raises(NonHomogeneousError) as exc:
        parse_poly("z0^2 + z1")
    assert exc.value.degrees == (2, 1)


@pytest.mark.parametrize("text", ["z0^", "z5", "3*", "z0 ++ z1", "(z0)", "z0^2 z1", "1/0*z0"])
def test_parse_errors_carry_position(text):
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly(text)
    assert exc.value.position >= 0


def test_parse_rationals_and_binary():
    f = parse_poly("3/2*z0^5 - z1^5")
    assert f.terms[(5, 0, 0, 0, 0)] == Fraction(3, 2)
    b = parse_poly("t^3 - s^2*t", "st")
    assert b.degree == 3 and b.coeffs == (0, -1, 0, 1)


def test_reduce_mod_p():
    assert reduce_mod_p(P("3/2*z0^5"), 5).to_str() == "4*z0^5"
    assert reduce_mod_p(P("7*z1^5"), 7).is_zero()
    with pytest.raises(BadPrimeError):
        reduce_mod_p(P("1/7*z0^5"), 7)


def test_binary_gcd():
    assert binary_gcd(B("s^2*t"), B("s*t^2")) == B("s*t")
    assert binary_gcd(B("s^3 - s*t^2"), B("s^2 - t^2")) == B("s^2 - t^2")
    assert binary_gcd(B("2*s^2 - 2*t^2"), BinaryForm.zero(0)) == B("s^2 - t^2")


def test_form_exact_div():
    assert form_exact_div(B("s^2 - t^2"), B("s - t")) == B("s + t")
    with pytest.raises(ValueError):
        form_exact_div(B("s^2 + t^2"), B("s - t"))


def test_monomial_basis_sizes_and_order():
    assert len(monomial_basis(5, 5)) == 126
    assert len(monomial_basis(5, 4)) == 70
    assert len(monomial_basis(2, 15)) == 16
    basis = monomial_basis(5, 2)
    assert basis[0] == (2, 0, 0, 0, 0)
    assert basis[-1] == (0, 0, 0, 0, 2)
    keys = [grevlex_key(e) for e in basis]
    assert keys == sorted(keys, reverse=True)
    # grevlex: z1^2 > z0*z2 (smaller last-variable exponent wins)
    assert grevlex_key((0, 2, 0, 0, 0)) > grevlex_key((1, 0, 1, 0, 0))


coeff = st.integers(-20, 20)


@st.composite
def quintics(draw, degree=3, nterms=6):
    mons = monomial_basis(5, degree)
    terms = {mons[draw(st.integers(0, len(mons) - 1))]: draw(coeff) for _ in range(nterms)}
    return MultiPoly(terms)


@settings(max_examples=60, deadline=None)
@given(quintics(), quintics(), quintics())
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert (f + g) - g == f


@settings(max_examples=60, deadline=None)
@given(quintics())
def test_parse_print_round_trip(f):
    assert parse_poly(f.to_str()) == f
    assert parse_poly(f.to_str()).to_str() == f.to_str()


@settings(max_examples=60, deadline=None)
@given(quintics())
def test_euler_identity(f):
    total = MultiPoly.zero()
    for i in range(5):
        total = total + MultiPoly.variable(i) * f.diff(i)
    assert total == f.scale(f.degree or 0) or f.is_zero()


@settings(max_examples=60, deadline=None)
@given(st.lists(coeff, min_size=4, max_size=4), st.lists(coeff, min_size=3, max_size=3))
def test_binary_form_product_and_gcd(a, b):
    fa, fb = BinaryForm(3, a), BinaryForm(2, b)
    prod = fa * fb
    assert prod(2, 3) == fa(2, 3) * fb(2, 3)
    if not fa.is_zero() and not fb.is_zero():
        g = binary_gcd(prod, fb)
        form_exact_div(prod, g)
        form_exact_div(fb, g)
        assert g.degree == fb.degree
