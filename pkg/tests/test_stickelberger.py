import random

import pytest

from goss_iwasawa.algebra import PrimeData, monic_irreducibles
from goss_iwasawa.errors import ConfigError, DegreeWindowError, NonUnitError
from goss_iwasawa.local import PadicElem, one_unit_part, teichmuller
from goss_iwasawa.stickelberger import (
    GroupRingElem,
    NotFound,
    default_cutoff,
    frobenius_decompose,
    gamma_group,
    n_invariant,
    sharp_value,
    theta_series,
    theta_sharp_at_one,
)


def random_elem(rng, group):
    R = group.prime.residue_field
    terms = [(rep, rng.randrange(R.order)) for rep in group.reps]
    return GroupRingElem.from_terms(group, terms)


def naive_product(a, b):
    """Convolution through the polynomial representatives."""
    group = a.group
    out = {}
    R = group.prime.residue_field
    for ra, ca in a.terms():
        for rb, cb in b.terms():
            key = (ra * rb) % group.modulus
            out[key] = R.add(out.get(key, 0), R.mul(ca, cb))
    return GroupRingElem.from_terms(group, list(out.items()))


# --- Frobenius ------------------------------------------------------------


def test_frobenius_examples(p_theta, F3):
    assert frobenius_decompose(p_theta, F3.poly([1, 1]), 1) == (1, F3.poly([1, 1]))
    assert frobenius_decompose(p_theta, F3.poly([2, 1]), 1) == (2, F3.poly([1, 2]))
    assert frobenius_decompose(p_theta, F3.poly([1, 0, 1]), 1) == (1, F3.one())


def test_frobenius_rejects_pi(p_theta, F3):
    with pytest.raises(NonUnitError):
        frobenius_decompose(p_theta, F3.theta(), 1)


def test_frobenius_recombines(p_quad):
    R = p_quad.residue_field
    for f in monic_irreducibles(p_quad.field, 3):
        if f == p_quad.pi:
            continue
        delta, gamma = frobenius_decompose(p_quad, f, 2)
        a = PadicElem(f, 3, p_quad)
        assert teichmuller(a) * PadicElem(gamma, 3, p_quad) == a
        assert R.from_poly(f) == delta
        assert PadicElem(gamma, 3, p_quad) == one_unit_part(a)


# --- group ring -----------------------------------------------------------


def test_group_ring_examples(p_theta):
    G = gamma_group(p_theta, 1)
    rng = random.Random(0)
    a = random_elem(rng, G)
    assert a * GroupRingElem.one(G) == a
    norm = GroupRingElem.norm_element(G)
    for g in range(G.order):
        gamma = GroupRingElem.basis(G, g)
        assert norm * gamma == norm
        assert (gamma - GroupRingElem.one(G)) * norm == GroupRingElem.zero(G)


@pytest.mark.parametrize("which,n", [("theta", 1), ("theta", 2), ("quad", 1)])
def test_group_ring_product_matches_convolution(which, n, p_theta, p_quad):
    prime = p_theta if which == "theta" else p_quad
    G = gamma_group(prime, n)
    rng = random.Random(n)
    for _ in range(5):
        a, b, c = (random_elem(rng, G) for _ in range(3))
        assert a * b == naive_product(a, b)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_group_order_and_canonical_order(p_theta, p_quad):
    assert gamma_group(p_theta, 2).order == 9
    assert gamma_group(p_quad, 1).order == 9
    G = gamma_group(p_quad, 1)
    assert G.reps == sorted(G.reps, key=lambda r: r.sort_key())
    assert G.reps[G.identity] == p_quad.field.one()


def test_projection_is_a_ring_map(p_theta):
    G = gamma_group(p_theta, 2)
    rng = random.Random(4)
    a, b = random_elem(rng, G), random_elem(rng, G)
    assert (a * b).project() == a.project() * b.project()
    assert (a + b).project() == a.project() + b.project()


# --- Theta series ---------------------------------------------------------


def test_constant_term_is_one(p_theta, p_quad):
    for prime in (p_theta, p_quad):
        for n in range(3):
            for i in range(prime.unit_group_order):
                s = theta_series(prime, n, i, default_cutoff(prime, n))
                assert s.coeff(0) == GroupRingElem.one(s.group)


def test_level_zero_odd_series_is_constant(p_theta):
    s = theta_series(p_theta, 0, 1, 4)
    assert s.coeff(0).scalar() == 1
    assert all(c.is_zero() for c in s.coeffs[1:])


def test_sharp_examples(p_theta, p_quad):
    v = theta_sharp_at_one(p_theta, 0, 1)
    assert v.level == 0 and v.scalar() == 1
    s = theta_series(p_quad, 0, 2, default_cutoff(p_quad, 0))
    _, rem = s.divide_one_minus_x()
    assert rem.is_zero()
    assert theta_sharp_at_one(p_quad, 0, 2).level == 0


def test_trivial_character_rejected(p_theta):
    with pytest.raises(ConfigError):
        theta_sharp_at_one(p_theta, 0, 0)
    with pytest.raises(ConfigError):
        n_invariant(p_theta, 0, 3)


@pytest.mark.parametrize("which", ["theta", "quad"])
def test_euler_factors_invert_the_series(which, p_theta, p_quad):
    prime = p_theta if which == "theta" else p_quad
    for n in range(3):
        for i in range(prime.unit_group_order):
            s = theta_series(prime, n, i, default_cutoff(prime, n))
            back = s.times_euler_factors()
            assert back[0] == GroupRingElem.one(s.group)
            assert all(c.is_zero() for c in back[1:])


@pytest.mark.parametrize("which", ["theta", "quad"])
def test_tower_projection(which, p_theta, p_quad):
    prime = p_theta if which == "theta" else p_quad
    for n in range(2):
        D = default_cutoff(prime, n + 1)
        for i in range(prime.unit_group_order):
            upper = theta_series(prime, n + 1, i, D).project()
            lower = theta_series(prime, n, i, D)
            assert upper.coeffs == lower.coeffs


@pytest.mark.parametrize("which", ["theta", "quad"])
def test_window_and_divisibility(which, p_theta, p_quad):
    prime = p_theta if which == "theta" else p_quad
    for n in range(3):
        for i in range(1, prime.unit_group_order):
            s = theta_series(prime, n, i, default_cutoff(prime, n))
            s.window_check()
            if s.is_even:
                _, rem = s.divide_one_minus_x()
                assert rem.is_zero()


def test_coefficients_stable_in_cutoff(p_theta):
    for i in range(2):
        small = theta_series(p_theta, 1, i, 4)
        big = theta_series(p_theta, 1, i, 7)
        assert big.coeffs[:5] == small.coeffs


def test_window_guard_fires(p_theta):
    s = theta_series(p_theta, 1, 1, 4)
    s.coeffs[4] = GroupRingElem.one(s.group)
    with pytest.raises(DegreeWindowError):
        s.window_check()
    with pytest.raises(DegreeWindowError):
        sharp_value(s)


@pytest.mark.parametrize("which", ["theta", "quad"])
def test_n_invariant_resolves(which, p_theta, p_quad):
    prime = p_theta if which == "theta" else p_quad
    for i in range(1, prime.unit_group_order):
        assert not isinstance(n_invariant(prime, i, 3), NotFound)
    assert n_invariant(p_theta, 1, 3) == 0


def test_sharp_value_lives_at_level_n(p_quad):
    for n in range(2):
        v = theta_sharp_at_one(p_quad, n, 1)
        assert v.level == n and v.group.order == 9 ** n


def test_prime_other_than_theta(F5):
    prime = PrimeData(F5.poly([2, 1]))
    for i in range(1, 4):
        assert not isinstance(n_invariant(prime, i, 2), NotFound)
