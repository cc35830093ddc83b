import random

import pytest
from hypothesis import given, settings, strategies as st

from goss_iwasawa.algebra import GF, PrimeData
from goss_iwasawa.errors import NonUnitError, PrecisionError
from goss_iwasawa.local import (
    AtLeast,
    LaurentElem,
    PadicElem,
    ZpApprox,
    digits_needed,
    laurent_pow_zp,
    one_unit_part,
    padic_pow_zp,
    sgn_and_one_unit_infty,
    teichmuller,
)


def elem(prime, coeffs, M):
    return PadicElem(prime.field.poly(coeffs), M, prime)


def random_unit(rng, prime, M):
    F = prime.field
    while True:
        a = PadicElem(F.poly([rng.randrange(F.q) for _ in range(M * prime.d + 2)]), M, prime)
        if a.is_unit():
            return a


# --- p-adic examples ------------------------------------------------------


def test_invert_two(p_theta):
    assert elem(p_theta, [2], 4).inverse() == elem(p_theta, [2], 4)


def test_valuation_of_theta_squared_times_unit(p_theta):
    assert elem(p_theta, [0, 0, 2, 1], 6).valuation() == 2


def test_invert_theta_plus_one(p_theta):
    assert elem(p_theta, [1, 1], 3).inverse() == elem(p_theta, [1, 2, 1], 3)


def test_zero_valuation_is_a_lower_bound(p_theta):
    assert elem(p_theta, [0, 0, 0, 1], 3).valuation() == AtLeast(3)


def test_teichmuller_examples(p_theta):
    assert teichmuller(elem(p_theta, [2, 1], 5)) == elem(p_theta, [2], 5)
    assert teichmuller(elem(p_theta, [1, 1], 5)) == elem(p_theta, [1], 5)
    w = teichmuller(elem(p_theta, [2, 1], 5))
    assert teichmuller(w) == w


def test_one_unit_examples(p_theta):
    assert one_unit_part(elem(p_theta, [2, 1], 5)) == elem(p_theta, [1, 2], 5)
    u = elem(p_theta, [1, 2, 1], 5)
    assert one_unit_part(u) == u
    assert one_unit_part(elem(p_theta, [2], 5)) == elem(p_theta, [1], 5)


def test_teichmuller_rejects_nonunits(p_theta):
    with pytest.raises(NonUnitError):
        teichmuller(elem(p_theta, [0, 1], 3))


def test_zp_power_examples(p_theta):
    u = elem(p_theta, [1, 1], 9)
    assert padic_pow_zp(u, ZpApprox(0, 2, 3)) == PadicElem.one(p_theta, 9)
    assert padic_pow_zp(u, ZpApprox(3, 2, 3)) == elem(p_theta, [1, 0, 0, 1], 9)
    assert padic_pow_zp(elem(p_theta, [1, 1], 3), ZpApprox(1, 1, 3)) == elem(p_theta, [1, 1], 3)


def test_zp_power_precision_rule(p_theta):
    u = elem(p_theta, [1, 1], 9)
    y = ZpApprox(1, 1, 3)
    assert padic_pow_zp(u, y).prec == 3
    with pytest.raises(PrecisionError):
        padic_pow_zp(u, y, 4)
    assert digits_needed(3, 4) == 2 and digits_needed(3, 3) == 1


# --- p-adic properties ----------------------------------------------------


@pytest.mark.parametrize("which", ["theta", "quad"])
def test_decomposition_on_random_units(which, p_theta, p_quad):
    prime = p_theta if which == "theta" else p_quad
    rng = random.Random(7)
    M = 6
    Q = prime.unit_group_order
    for _ in range(200):
        a = random_unit(rng, prime, M)
        w, u = teichmuller(a), one_unit_part(a)
        assert w * u == a
        assert w ** Q == PadicElem.one(prime, M)
        assert (u - PadicElem.one(prime, M)).valuation() != 0


@pytest.mark.parametrize("which", ["theta", "quad"])
def test_decomposition_is_multiplicative(which, p_theta, p_quad):
    prime = p_theta if which == "theta" else p_quad
    rng = random.Random(11)
    for _ in range(50):
        a, b = random_unit(rng, prime, 5), random_unit(rng, prime, 5)
        assert teichmuller(a * b) == teichmuller(a) * teichmuller(b)
        assert one_unit_part(a * b) == one_unit_part(a) * one_unit_part(b)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.lists(st.integers(0, 2), min_size=1, max_size=5))
def test_zp_power_is_additive_in_the_exponent(y1, y2, tail):
    prime = PrimeData(GF(3).theta())
    u = PadicElem(GF(3).poly([1] + tail), 9, prime)
    a, b = ZpApprox(y1, 4, 3), ZpApprox(y2, 4, 3)
    lhs = padic_pow_zp(u, a + b, 9)
    assert lhs == padic_pow_zp(u, a, 9) * padic_pow_zp(u, b, 9)


def test_zp_power_agrees_with_integer_power(p_quad):
    rng = random.Random(3)
    for _ in range(20):
        u = one_unit_part(random_unit(rng, p_quad, 5))
        for y in (0, 1, 2, 7, 26):
            assert padic_pow_zp(u, ZpApprox(y, 3, 3), 5) == u ** y


@pytest.mark.parametrize("m", [1, 2])
def test_one_units_contract(m, p_theta, p_quad):
    rng = random.Random(m)
    for prime in (p_theta, p_quad):
        M = 3 ** m
        for _ in range(30):
            u = one_unit_part(random_unit(rng, prime, M))
            assert u ** (3 ** m) == PadicElem.one(prime, M)


def test_precision_takes_the_minimum(p_theta):
    a, b = elem(p_theta, [1, 1], 3), elem(p_theta, [2], 5)
    assert (a + b).prec == 3 and (a * b).prec == 3


# --- infinity -------------------------------------------------------------


def test_sign_and_one_unit_examples(F3):
    s, u = sgn_and_one_unit_infty(F3.poly([1, 2]))
    assert s == 2 and u == LaurentElem(F3, 0, (1, 2))
    assert sgn_and_one_unit_infty(F3.one()) == (1, LaurentElem.one(F3))
    assert sgn_and_one_unit_infty(F3.theta()) == (1, LaurentElem.one(F3))


def test_laurent_power_examples(F3):
    u = LaurentElem(F3, 0, (1, 1))
    assert laurent_pow_zp(u, ZpApprox(0, 2, 3)) == LaurentElem.one(F3).truncate(9)
    assert laurent_pow_zp(u, ZpApprox(3, 3, 3), 27) == LaurentElem(F3, 0, (1, 0, 0, 1), 27)
    assert laurent_pow_zp(u, ZpApprox(2, 1, 3), 2) == LaurentElem(F3, 0, (1, 2), 2)


def test_laurent_power_precision_rule(F3):
    u = LaurentElem(F3, 0, (1, 1))
    with pytest.raises(PrecisionError):
        laurent_pow_zp(u, ZpApprox(2, 1, 3), 4)
    with pytest.raises(NonUnitError):
        laurent_pow_zp(LaurentElem(F3, 0, (2, 1)), ZpApprox(2, 1, 3))


def test_exact_zero_differs_from_inexact_zero(F3):
    exact = LaurentElem.zero(F3)
    approx = LaurentElem.zero(F3, 5)
    assert exact.is_exact_zero() and not approx.is_exact_zero()
    assert approx.is_zero() and approx.valuation() == AtLeast(5)
    assert exact != approx


def test_laurent_inverse_roundtrip(F3):
    a = LaurentElem.from_poly(F3.poly([1, 2, 0, 1]))
    inv = a.inverse(12)
    prod = a * inv
    assert prod.agrees_with(LaurentElem.one(F3))
    assert prod.absprec is not None and prod.absprec >= 12


def test_laurent_matches_polynomial_product(F3):
    rng = random.Random(5)
    for _ in range(30):
        a = F3.poly([rng.randrange(3) for _ in range(5)] + [1])
        b = F3.poly([rng.randrange(3) for _ in range(4)] + [2])
        assert LaurentElem.from_poly(a) * LaurentElem.from_poly(b) == LaurentElem.from_poly(a * b)
