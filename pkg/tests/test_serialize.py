import json
import random

from hypothesis import given, settings, strategies as st

from goss_iwasawa.algebra import GF, Poly, PrimeData
from goss_iwasawa.local import AtLeast, LaurentElem, PadicElem
from goss_iwasawa.serialize import (
    field_from_json,
    field_to_json,
    group_ring_from_json,
    group_ring_to_json,
    laurent_from_json,
    laurent_to_json,
    padic_from_json,
    padic_to_json,
    poly_from_json,
    poly_to_json,
    valuation_from_json,
    valuation_to_json,
)
from goss_iwasawa.stickelberger import GroupRingElem, gamma_group


def through_text(obj):
    return json.loads(json.dumps(obj))


def test_schema_shapes(p_theta, F3):
    assert poly_to_json(F3.poly([1, 0, 2])) == [1, 0, 2]
    assert poly_to_json(F3.zero()) == []
    assert padic_to_json(PadicElem(F3.poly([1, 2]), 4, p_theta)) == {"rep": [1, 2], "prec": 4}
    assert laurent_to_json(LaurentElem(F3, -1, (1, 2), 3)) == {"val": -1, "coeffs": [1, 2], "absprec": 3}
    assert valuation_to_json(AtLeast(4)) == {"at_least": 4}


def test_field_roundtrip():
    for F in (GF(3), GF(5), GF(3, 2, (1, 0, 1))):
        assert field_from_json(through_text(field_to_json(F))) == F


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 8), max_size=10))
def test_poly_roundtrip_q9(coeffs):
    F = GF(3, 2, (1, 0, 1))
    a = Poly(F, coeffs)
    assert poly_from_json(F, through_text(poly_to_json(a))) == a


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=10), st.integers(1, 6))
def test_padic_roundtrip(coeffs, M):
    prime = PrimeData(GF(3).poly([1, 0, 1]))
    x = PadicElem(Poly(prime.field, coeffs), M, prime)
    assert padic_from_json(prime, through_text(padic_to_json(x))) == x


@settings(max_examples=60, deadline=None)
@given(st.integers(-5, 5), st.lists(st.integers(0, 4), max_size=6), st.one_of(st.none(), st.integers(-5, 12)))
def test_laurent_roundtrip(val, coeffs, absprec):
    F = GF(5)
    if absprec is not None and absprec < val:
        absprec = val
    x = LaurentElem(F, val, coeffs, absprec)
    y = laurent_from_json(F, through_text(laurent_to_json(x)))
    assert y == x and y.absprec == x.absprec


def test_group_ring_roundtrip(p_quad):
    G = gamma_group(p_quad, 1)
    rng = random.Random(0)
    for _ in range(10):
        g = GroupRingElem.from_terms(G, [(rep, rng.randrange(9)) for rep in G.reps])
        assert group_ring_from_json(p_quad, through_text(group_ring_to_json(g))) == g


def test_valuation_roundtrip():
    for v in (0, 3, AtLeast(5)):
        assert valuation_from_json(through_text(valuation_to_json(v))) == v
