"""Exact arithmetic for Goss zeta values, p-adic L-functions and Stickelberger series over F_q[theta]."""

from .algebra import GF, FiniteField, Poly, PrimeData
from .errors import (
    ConfigError,
    DegreeWindowError,
    DivergenceError,
    DivisionRemainderError,
    FieldMismatchError,
    GossError,
    GuardError,
    NonUnitError,
    PrecisionError,
    UnresolvedError,
)
from .local import AtLeast, LaurentElem, PadicElem, ZpApprox

__all__ = [
    "GF",
    "FiniteField",
    "Poly",
    "PrimeData",
    "AtLeast",
    "LaurentElem",
    "PadicElem",
    "ZpApprox",
    "GossError",
    "ConfigError",
    "FieldMismatchError",
    "NonUnitError",
    "PrecisionError",
    "DivergenceError",
    "GuardError",
    "DegreeWindowError",
    "DivisionRemainderError",
    "UnresolvedError",
]
