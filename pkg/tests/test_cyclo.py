"""Tests for exact cyclotomic arithmetic.

Hand-derived expectations used below:

* (1 + z8)(1 + z8^7) = 1 + z8 + z8^7 + z8^8 = 2 + z8 + z8^7, since z8^8 = 1.
* conj(z8 + z8^3) = z8^-1 + z8^-3 = z8^7 + z8^5.
* 2*cos(pi/6) = sqrt(3) and cos(pi/6) = cos(2*pi/12).
* zeta_6 = -zeta_3^2 (multiply by zeta_3^3 = 1... directly: e^(i*pi/3) =
  -e^(i*pi/3 + i*pi) = -e^(4*pi*i/3) = -zeta_3^2), so the minimal order of
  zeta_6 is 3.
"""

from fractions import Fraction

import mpmath
from hypothesis import given, settings, strategies as st

from verlkit.cyclo import (
    CycNumber,
    DivisionByZero,
    _cond,
    _mul_int_vecs,
    _mul_reference,
    cos_frac,
    cyc_arith,
    cyc_conjugate,
    rational,
    real_embed,
    sin_frac,
    sqrt_int,
    zeta,
)

ORDERS = [1, 3, 4, 5, 8, 12]


def small_cyc(order):
    return st.lists(
        st.integers(min_value=-9, max_value=9), min_size=1, max_size=order
    ).map(lambda cs: CycNumber(order, cs))


any_cyc = st.sampled_from(ORDERS).flatmap(small_cyc)


def test_product_of_eighth_roots():
    a = rational(1) + zeta(8)
    b = rational(1) + zeta(8, 7)
    assert a * b == rational(2) + zeta(8) + zeta(8, 7)


def test_conjugate_moves_exponents():
    a = zeta(8) + zeta(8, 3)
    assert cyc_conjugate(a) == zeta(8, 7) + zeta(8, 5)


def test_two_cos_is_sqrt_three():
    assert 2 * cos_frac(1, 12) == sqrt_int(3)


def test_zeta_six_normalizes_to_order_three():
    n = zeta(6).normalized()
    assert n.order == 3
    assert n == zeta(6)


def test_rational_fast_paths():
    x = rational(Fraction(3, 4), order=8)
    assert x.is_rational()
    assert x.as_fraction() == Fraction(3, 4)
    assert x.normalized().order == 1


def test_render_forms():
    assert rational(Fraction(1, 2)).render() == "1/2"
    assert zeta(8).render() == "z(8)^1"
    assert (rational(2) + zeta(8) - 3 * zeta(8, 3)).render() == "2 + z(8)^1 - 3*z(8)^3"
    assert rational(0).render() == "0"


def test_division_by_zero_raises():
    try:
        cyc_arith(zeta(4), rational(0), "div")
    except DivisionByZero:
        pass
    else:
        raise AssertionError("expected DivisionByZero")


def test_sqrt_int_small_values():
    with mpmath.workdps(50):
        for m in range(0, 40):
            r = sqrt_int(m)
            assert (r * r).as_int() == m
            approx = real_embed(r)
            assert abs(approx - mpmath.sqrt(m)) < mpmath.mpf("1e-28")


def test_real_embed_precision():
    with mpmath.workdps(50):
        delta = real_embed(sqrt_int(2)) - mpmath.sqrt(2)
        assert abs(delta) < mpmath.mpf("1e-30")


def test_sin_cos_pythagoras():
    for num, den in [(1, 12), (1, 8), (2, 7), (3, 20)]:
        c, s = cos_frac(num, den), sin_frac(num, den)
        assert c * c + s * s == rational(1)


def test_powers_and_inverse():
    z = zeta(5)
    assert z**5 == rational(1)
    assert z**-2 == zeta(5, 3)
    assert (zeta(7) + rational(2)).inverse() * (zeta(7) + rational(2)) == rational(1)


@given(any_cyc, any_cyc, any_cyc)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(any_cyc)
@settings(max_examples=40, deadline=None)
def test_field_inverse(a):
    if not a.is_zero():
        assert a * a.inverse() == rational(1)


@given(any_cyc, any_cyc)
@settings(max_examples=40, deadline=None)
def test_conjugation_is_involution(a, b):
    assert cyc_conjugate(cyc_conjugate(a)) == a
    assert cyc_conjugate(a * b) == cyc_conjugate(a) * cyc_conjugate(b)
    assert cyc_conjugate(a + b) == cyc_conjugate(a) + cyc_conjugate(b)


@given(any_cyc)
@settings(max_examples=40, deadline=None)
def test_norm_is_nonnegative_real(a):
    n = a * cyc_conjugate(a)
    assert n == cyc_conjugate(n)
    approx = real_embed(n)
    assert abs(mpmath.im(approx)) < mpmath.mpf("1e-25")
    assert mpmath.re(approx) > -mpmath.mpf("1e-25")


@given(any_cyc)
@settings(max_examples=40, deadline=None)
def test_normalized_preserves_value(a):
    n = a.normalized()
    assert n == a
    assert a.order % n.order == 0
    assert n.normalized().order == n.order


@given(
    st.sampled_from([3, 4, 8, 9, 12]),
    st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=12),
    st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=12),
)
@settings(max_examples=60, deadline=None)
def test_packed_multiply_matches_reference(order, xs, ys):
    cond = _cond(order)
    a = list(xs[: cond.phi]) + [0] * max(0, cond.phi - len(xs))
    b = list(ys[: cond.phi]) + [0] * max(0, cond.phi - len(ys))
    assert _mul_int_vecs(a, b, cond) == _mul_reference(a, b, cond)


@given(any_cyc)
@settings(max_examples=30, deadline=None)
def test_galois_orbit_multiplicative(a):
    n = a.order
    for j in range(1, n + 1):
        from math import gcd

        if gcd(j, n) == 1:
            assert a.galois(j) * a.galois(j) == (a * a).galois(j)


def test_cross_order_equality():
    assert zeta(4) == zeta(8, 2)
    assert zeta(3) + zeta(3, 2) == rational(-1)
    assert hash(zeta(4)) == hash(zeta(8, 2))


def test_arith_dispatch():
    a, b = zeta(8), zeta(8, 3)
    assert cyc_arith(a, b, "add") == a + b
    assert cyc_arith(a, b, "sub") == a - b
    assert cyc_arith(a, b, "mul") == a * b
    assert cyc_arith(a, b, "div") == a / b


def test_coeff_vector_shape():
    v = zeta(8, 1).coeff_vector()
    assert len(v) == 8
    assert v[1] == 1 and sum(abs(x) for x in v) == 1
