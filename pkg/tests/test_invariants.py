import math

import pytest

from goss_iwasawa.algebra import GF, PrimeData
from goss_iwasawa.errors import ConfigError, UnresolvedError
from goss_iwasawa.goss import is_even_index
from goss_iwasawa.invariants import (
    beta_scan,
    estmi_check,
    estmi_holds,
    estmi_seed,
    inequality_report,
    m_invariant,
    poly_valuation,
    reverify_certificate,
)
from goss_iwasawa.local import AtLeast
from goss_iwasawa.stickelberger import theta_sharp_at_one


@pytest.fixture(scope="module")
def p_q5():
    """A degree-2 prime over F_5 where m(18) = 1."""
    return PrimeData(GF(5).poly([1, 1, 1]))


def test_m_theta_one(p_theta):
    r = m_invariant(p_theta, 1)
    assert r.value == 0 and r.witness_j == 1
    assert reverify_certificate(p_theta, r)


def test_estmi_seed_matches_float_formula():
    for q, d in ((3, 1), (3, 2), (5, 2)):
        for i in range(1, 30):
            expected = math.floor((i / d) * math.log(i + 1, q)) + 2
            assert estmi_seed(q, d, i) == expected


def test_estmi_theta(p_theta):
    rep = estmi_check(p_theta, 1)
    assert rep.value == 0 and rep.holds
    assert abs(rep.bound - math.log(2, 3)) < 1e-12


def test_estmi_rejects_even(p_theta):
    with pytest.raises(ConfigError):
        estmi_check(p_theta, 2)


def test_degree_two_table(p_quad):
    for i in range(1, 8):
        rep = inequality_report(p_quad, i)
        assert rep.holds
        assert reverify_certificate(p_quad, rep.m_result)
        if not is_even_index(i, 3):
            assert estmi_holds(3, 2, i, m_invariant(p_quad, i).value)


def test_m_matches_beta_scan(p_quad):
    for i in range(1, 8):
        r = m_invariant(p_quad, i)
        best, _ = beta_scan(p_quad, i, 200)
        assert r.value == best


def test_zero_m_forces_zero_n(p_quad):
    for i in range(1, 8):
        rep = inequality_report(p_quad, i)
        if rep.m_value == 0:
            assert rep.n_value == 0
            assert not theta_sharp_at_one(p_quad, 0, i).is_zero()


def test_independent_of_starting_precision(p_quad):
    for i in (1, 2, 5):
        values = {m_invariant(p_quad, i, M_init=M).value for M in (1, 2, 4, 8)}
        assert len(values) == 1


def test_even_value_at_one_vanishes(p_quad):
    for i in (0, 2, 4, 6):
        r = m_invariant(p_quad, i)
        assert r.even and r.value_at_one_vanishes


def test_nonzero_m(p_q5):
    r = m_invariant(p_q5, 18, M_init=2)
    assert r.value == 1 and r.witness_j == 18
    assert beta_scan(p_q5, 18, 426) == (1, 18)
    assert reverify_certificate(p_q5, r)


def test_unresolved_is_reported(p_q5):
    r = m_invariant(p_q5, 18, M_init=1, M_cap=1)
    assert not r.resolved
    assert all(v == AtLeast(1) for _, v in r.valuations)


def test_unresolved_raises_in_reports(p_q5):
    with pytest.raises(UnresolvedError):
        estmi_check(p_q5, 18, M_cap=1)


def test_inequality_needs_positive_index(p_theta):
    with pytest.raises(ConfigError):
        inequality_report(p_theta, 0)


def test_poly_valuation(F3):
    theta = F3.theta()
    assert poly_valuation(theta ** 3 * F3.poly([1, 1]), theta) == 3
    assert poly_valuation(F3.zero(), theta) is None
