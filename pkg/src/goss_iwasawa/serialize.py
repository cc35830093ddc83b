"""JSON encoding of the exact objects.

Schema:

* F_q element: the int whose base-p digits are its coordinates.
* Poly: little-endian list of F_q elements, ``[]`` for zero.
* PadicElem: ``{"rep": Poly, "prec": M}``.
* LaurentElem: ``{"val": v, "coeffs": [...], "absprec": N or null}`` where
  ``coeffs[k]`` multiplies (1/theta)^(v+k) and ``null`` marks an exact value.
* GroupRingElem: ``{"level": n, "terms": [[Poly, residue], ...]}`` with the
  terms in the canonical order of Gamma_n; residues encode ``sum c_k q^k``.
* valuations: an int, or ``{"at_least": M}`` for a zero known modulo pi^M.
"""

from __future__ import annotations

from typing import Any

from .algebra import FiniteField, GF, Poly, PrimeData
from .local import AtLeast, LaurentElem, PadicElem
from .stickelberger import GroupRingElem, gamma_group


def field_to_json(F: FiniteField) -> dict:
    return {"p": F.p, "e": F.e, "modulus": list(F.modulus) if F.e > 1 else None}


def field_from_json(obj: dict) -> FiniteField:
    modulus = obj.get("modulus")
    return GF(obj["p"], obj.get("e", 1), tuple(modulus) if modulus else None)


def poly_to_json(a: Poly) -> list[int]:
    return list(a.coeffs)


def poly_from_json(F: FiniteField, obj: list[int]) -> Poly:
    return Poly(F, obj)


def padic_to_json(x: PadicElem) -> dict:
    return {"rep": poly_to_json(x.rep), "prec": x.prec}


def padic_from_json(prime: PrimeData, obj: dict) -> PadicElem:
    return PadicElem(poly_from_json(prime.field, obj["rep"]), obj["prec"], prime)


def laurent_to_json(x: LaurentElem) -> dict:
    return {"val": x.val, "coeffs": list(x.coeffs), "absprec": x.absprec}


def laurent_from_json(F: FiniteField, obj: dict) -> LaurentElem:
    return LaurentElem(F, obj["val"], obj["coeffs"], obj["absprec"])


def group_ring_to_json(g: GroupRingElem) -> dict:
    return {"level": g.level, "terms": [[poly_to_json(rep), c] for rep, c in g.terms()]}


def group_ring_from_json(prime: PrimeData, obj: dict) -> GroupRingElem:
    group = gamma_group(prime, obj["level"])
    terms = [(poly_from_json(prime.field, rep), c) for rep, c in obj["terms"]]
    return GroupRingElem.from_terms(group, terms)


def valuation_to_json(v: Any) -> Any:
    if isinstance(v, AtLeast):
        return {"at_least": v.bound}
    return v


def valuation_from_json(obj: Any) -> Any:
    if isinstance(obj, dict):
        return AtLeast(obj["at_least"])
    return obj
