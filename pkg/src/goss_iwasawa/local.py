"""Truncated completions of A: A/p^M at a finite prime and F_q((1/theta)) at infinity.

Every value carries its precision.  Binary operations take the minimum of
the operand precisions, so an answer never claims more digits than its
inputs determine.  Exponents in Z_p are :class:`ZpApprox` values known
modulo p^m; since (1 + x)^(p^m) = 1 + x^(p^m) in characteristic p, such an
exponent determines a power of a one-unit to precision p^m and no further.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .algebra import FiniteField, Poly, PrimeData, _mul_coeffs, _strip, int_log_ceil
from .errors import FieldMismatchError, NonUnitError, PrecisionError


@dataclass(frozen=True)
class AtLeast:
    """A lower bound standing in for the valuation of a zero known only to finite precision."""

    bound: int

    def __str__(self):
        return f">= {self.bound}"


@dataclass(frozen=True)
class ZpApprox:
    """A p-adic integer known modulo p^m."""

    value: int
    m: int
    p: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("digit count must be non-negative")
        if not 0 <= self.value < self.p ** self.m:
            raise ValueError(f"value {self.value} is not reduced modulo {self.p}^{self.m}")

    @classmethod
    def from_int(cls, n: int, p: int, m: int) -> "ZpApprox":
        return cls(n % p ** m, m, p)

    @property
    def modulus(self) -> int:
        return self.p ** self.m

    def digits(self) -> list[int]:
        out, v = [], self.value
        for _ in range(self.m):
            out.append(v % self.p)
            v //= self.p
        return out

    def _check(self, other: "ZpApprox") -> None:
        if self.p != other.p:
            raise FieldMismatchError("p-adic integers for different primes")

    def __neg__(self) -> "ZpApprox":
        return ZpApprox.from_int(-self.value, self.p, self.m)

    def __add__(self, other: "ZpApprox") -> "ZpApprox":
        self._check(other)
        m = min(self.m, other.m)
        return ZpApprox.from_int(self.value + other.value, self.p, m)

    def reduce(self, m: int) -> "ZpApprox":
        if m > self.m:
            raise PrecisionError(f"cannot extend {self.m} known digits to {m}")
        return ZpApprox.from_int(self.value, self.p, m)


def digits_needed(p: int, prec: int) -> int:
    """Smallest m with p^m >= prec."""
    return int_log_ceil(p, max(prec, 1))


# ---------------------------------------------------------------------------
# finite places


class PadicElem:
    """Element of A/pi^M with M = ``prec``."""

    __slots__ = ("rep", "prec", "prime")

    def __init__(self, rep: Poly, prec: int, prime: PrimeData):
        if prec < 1:
            raise PrecisionError("precision must be at least 1")
        if rep.field != prime.field:
            raise FieldMismatchError("representative and prime over different fields")
        self.prime = prime
        self.prec = prec
        self.rep = rep % prime.power(prec)

    @classmethod
    def _make(cls, rep: Poly, prec: int, prime: PrimeData) -> "PadicElem":
        obj = object.__new__(cls)
        obj.rep, obj.prec, obj.prime = rep, prec, prime
        return obj

    @classmethod
    def from_int(cls, c: int, prime: PrimeData, prec: int) -> "PadicElem":
        """The image of an F_q constant."""
        return cls(prime.field.const(c), prec, prime)

    @classmethod
    def one(cls, prime: PrimeData, prec: int) -> "PadicElem":
        return cls(prime.field.one(), prec, prime)

    @classmethod
    def zero(cls, prime: PrimeData, prec: int) -> "PadicElem":
        return cls(prime.field.zero(), prec, prime)

    def _join(self, other: "PadicElem") -> int:
        if not isinstance(other, PadicElem):
            raise TypeError(f"expected PadicElem, got {type(other).__name__}")
        if other.prime != self.prime:
            raise FieldMismatchError("p-adic elements at different primes")
        return min(self.prec, other.prec)

    def with_prec(self, prec: int) -> "PadicElem":
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision from {self.prec} to {prec}")
        if prec == self.prec:
            return self
        return PadicElem(self.rep, prec, self.prime)

    def __add__(self, other: "PadicElem") -> "PadicElem":
        M = self._join(other)
        return PadicElem(self.rep + other.rep, M, self.prime)

    def __sub__(self, other: "PadicElem") -> "PadicElem":
        M = self._join(other)
        return PadicElem(self.rep - other.rep, M, self.prime)

    def __neg__(self) -> "PadicElem":
        return PadicElem._make(-self.rep, self.prec, self.prime)

    def __mul__(self, other: "PadicElem") -> "PadicElem":
        M = self._join(other)
        return PadicElem(self.rep * other.rep, M, self.prime)

    def scale(self, c: int) -> "PadicElem":
        return PadicElem._make(self.rep.scale(c), self.prec, self.prime)

    def is_unit(self) -> bool:
        return not (self.rep % self.prime.pi).is_zero()

    def inverse(self) -> "PadicElem":
        if not self.is_unit():
            raise NonUnitError(f"{self.rep} is not a unit modulo {self.prime.pi}")
        return PadicElem._make(self.rep.inverse_mod(self.prime.power(self.prec)), self.prec, self.prime)

    def __truediv__(self, other: "PadicElem") -> "PadicElem":
        return self * other.inverse()

    def __pow__(self, k: int) -> "PadicElem":
        if k < 0:
            return self.inverse() ** (-k)
        return PadicElem._make(self.rep.pow_mod(k, self.prime.power(self.prec)), self.prec, self.prime)

    def divide_by_pi(self) -> "PadicElem":
        """Exact division by pi; the result is known to one digit less."""
        if self.prec < 2:
            raise PrecisionError("no digits left after dividing by pi")
        q, r = divmod(self.rep, self.prime.pi)
        if not r.is_zero():
            raise NonUnitError("element is not divisible by pi")
        return PadicElem(q, self.prec - 1, self.prime)

    def valuation(self) -> int | AtLeast:
        """pi-adic valuation, or ``AtLeast(prec)`` when the representative is zero."""
        if self.rep.is_zero():
            return AtLeast(self.prec)
        v, r = 0, self.rep
        pi = self.prime.pi
        while True:
            q, rem = divmod(r, pi)
            if not rem.is_zero():
                return v
            v, r = v + 1, q

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def residue(self) -> int:
        """Image in the residue field A/pi, as a residue-field element code."""
        return self.prime.residue_field.from_poly(self.rep)

    def __eq__(self, other):
        return (
            isinstance(other, PadicElem)
            and self.prec == other.prec
            and self.prime == other.prime
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.rep, self.prec))

    def __repr__(self):
        return f"PadicElem({self.rep} + O(({self.prime.pi})^{self.prec}))"


def _require_unit(a: PadicElem) -> None:
    if not a.is_unit():
        raise NonUnitError(f"{a.rep} is divisible by {a.prime.pi}")


def teichmuller(a: PadicElem) -> PadicElem:
    """The root of unity congruent to a modulo pi, to the precision of a."""
    _require_unit(a)
    Q = a.prime.field.q ** a.prime.d
    iterations = int_log_ceil(Q, a.prec) + 1
    mod = a.prime.power(a.prec)
    x = a.rep
    for _ in range(iterations):
        # coefficients lie in F_q, so x^Q is the substitution theta -> theta^Q
        x = x.expand(Q) % mod
    return PadicElem._make(x, a.prec, a.prime)


def teichmuller_residue(prime: PrimeData, r: int, prec: int) -> PadicElem:
    """Teichmuller lift of a residue-field element (0 lifts to 0)."""
    if r == 0:
        return PadicElem.zero(prime, prec)
    return teichmuller(PadicElem(prime.residue_field.to_poly(r), prec, prime))


def one_unit_part(a: PadicElem) -> PadicElem:
    """<a> = a / omega(a), congruent to 1 modulo pi."""
    return a * teichmuller(a).inverse()


def _frobenius_mod(x: Poly, p: int, mod: Poly) -> Poly:
    return x.frobenius() % mod


def padic_pow_zp(u: PadicElem, y: ZpApprox, prec: int | None = None) -> PadicElem:
    """u^y for a one-unit u.

    The default precision is min(prec(u), p^m).  Asking for more than p^m
    raises :class:`PrecisionError`, since the unknown digits of y would
    change the answer.
    """
    prime = u.prime
    p = prime.field.p
    if y.p != p:
        raise FieldMismatchError(f"exponent lives in Z_{y.p}, not Z_{p}")
    if not (u.rep - prime.field.one()) % prime.pi == prime.field.zero():
        raise NonUnitError("Z_p powers are defined only for one-units")
    if prec is None:
        prec = min(u.prec, y.modulus)
    elif prec > y.modulus:
        raise PrecisionError(
            f"precision {prec} needs {digits_needed(p, prec)} exponent digits, only {y.m} known"
        )
    elif prec > u.prec:
        raise PrecisionError(f"base is only known to precision {u.prec}")
    mod = prime.power(prec)
    base = u.rep % mod
    result = prime.field.one() % mod
    power = 1
    for digit in y.digits():
        if power >= prec:
            break  # base is now 1 modulo pi^prec
        if digit:
            result = (result * base.pow_mod(digit, mod)) % mod
        base = _frobenius_mod(base, p, mod)
        power *= p
    return PadicElem._make(result, prec, prime)


# ---------------------------------------------------------------------------
# the place at infinity, t = 1/theta


class LaurentElem:
    """Truncated Laurent series sum_k coeffs[k] * t^(val + k) + O(t^absprec), t = 1/theta.

    ``absprec`` is ``None`` for exact values.  An exact zero and a zero known
    to precision N (``O(t^N)``) are different values.
    """

    __slots__ = ("field", "val", "coeffs", "absprec")

    def __init__(self, field: FiniteField, val: int, coeffs: Sequence[int], absprec: int | None = None):
        coeffs = [int(c) for c in coeffs]
        if absprec is not None:
            coeffs = coeffs[: max(0, absprec - val)]
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        coeffs = coeffs[k:]
        val += k
        if absprec is None:
            coeffs = list(_strip(coeffs))
        if not coeffs:
            val = 0 if absprec is None else absprec
        self.field = field
        self.val = val
        self.coeffs = tuple(coeffs)
        self.absprec = absprec

    # constructors
    @classmethod
    def from_poly(cls, a: Poly) -> "LaurentElem":
        if a.is_zero():
            return cls(a.field, 0, ())
        return cls(a.field, -a.degree, tuple(reversed(a.coeffs)))

    @classmethod
    def theta_pow(cls, field: FiniteField, k: int, c: int = 1) -> "LaurentElem":
        """c * theta^k."""
        return cls(field, -k, (c,))

    @classmethod
    def one(cls, field: FiniteField) -> "LaurentElem":
        return cls(field, 0, (1,))

    @classmethod
    def zero(cls, field: FiniteField, absprec: int | None = None) -> "LaurentElem":
        return cls(field, 0 if absprec is None else absprec, (), absprec)

    # inspection
    @property
    def exact(self) -> bool:
        return self.absprec is None

    @property
    def prec(self) -> int | None:
        """Number of known coefficients after the leading one (relative precision)."""
        return None if self.absprec is None else self.absprec - self.val

    def is_exact_zero(self) -> bool:
        return self.absprec is None and not self.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int | AtLeast | float:
        if self.coeffs:
            return self.val
        if self.absprec is None:
            return math.inf
        return AtLeast(self.absprec)

    def coeff(self, k: int) -> int:
        """Coefficient of t^k (known coefficients only)."""
        if self.absprec is not None and k >= self.absprec:
            raise PrecisionError(f"coefficient of t^{k} is beyond the known precision {self.absprec}")
        i = k - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def truncate(self, absprec: int) -> "LaurentElem":
        if self.absprec is not None and absprec > self.absprec:
            raise PrecisionError(f"cannot raise precision from {self.absprec} to {absprec}")
        return LaurentElem(self.field, self.val, self.coeffs, absprec)

    def _check(self, other: "LaurentElem") -> None:
        if not isinstance(other, LaurentElem):
            raise TypeError(f"expected LaurentElem, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError("Laurent series over different fields")

    # arithmetic
    def __add__(self, other: "LaurentElem") -> "LaurentElem":
        self._check(other)
        absprec = _min_prec(self.absprec, other.absprec)
        if self.is_exact_zero():
            return other if absprec is None else other.truncate(absprec)
        if other.is_exact_zero():
            return self if absprec is None else self.truncate(absprec)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        if absprec is not None:
            hi = min(hi, absprec)
        F = self.field
        out = [0] * max(0, hi - lo)
        for src in (self, other):
            for k, c in enumerate(src.coeffs):
                i = src.val + k - lo
                if i < len(out):
                    out[i] = F.add(out[i], c)
        return LaurentElem(F, lo, out, absprec)

    def __neg__(self) -> "LaurentElem":
        F = self.field
        return LaurentElem(F, self.val, [F.neg(c) for c in self.coeffs], self.absprec)

    def __sub__(self, other: "LaurentElem") -> "LaurentElem":
        return self + (-other)

    def __mul__(self, other: "LaurentElem") -> "LaurentElem":
        self._check(other)
        F = self.field
        if self.is_exact_zero() or other.is_exact_zero():
            return LaurentElem(F, 0, ())
        # an inexact zero stores val == absprec, so val is a valid lower bound here
        candidates = []
        if self.absprec is not None:
            candidates.append(self.absprec + other.val)
        if other.absprec is not None:
            candidates.append(other.absprec + self.val)
        absprec = min(candidates) if candidates else None
        val = self.val + other.val
        if not self.coeffs or not other.coeffs:
            return LaurentElem(F, 0, (), absprec)
        a, b = self.coeffs, other.coeffs
        if absprec is not None:
            n = max(0, absprec - val)
            a, b = a[:n], b[:n]
        prod = _mul_coeffs(F, a, b)
        return LaurentElem(F, val, prod, absprec)

    def scale(self, c: int) -> "LaurentElem":
        F = self.field
        if c == 0:
            return LaurentElem(F, 0, (), self.absprec)
        return LaurentElem(F, self.val, [F.mul(c, x) for x in self.coeffs], self.absprec)

    def inverse(self, relprec: int | None = None) -> "LaurentElem":
        """Multiplicative inverse.  Exact inputs with several terms need ``relprec``."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a (possibly inexact) zero")
        F = self.field
        if self.absprec is None:
            if len(self.coeffs) == 1 and relprec is None:
                return LaurentElem(F, -self.val, (F.inv(self.coeffs[0]),))
            if relprec is None:
                raise PrecisionError("inverse of an exact series needs a target precision")
        else:
            own = self.absprec - self.val
            relprec = own if relprec is None else min(relprec, own)
        inv = _series_inverse(F, self.coeffs, relprec)
        return LaurentElem(F, -self.val, inv, -self.val + relprec)

    def __pow__(self, k: int) -> "LaurentElem":
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentElem.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius(self) -> "LaurentElem":
        """self ** p, coefficientwise."""
        F = self.field
        p = F.p
        out = [0] * ((len(self.coeffs) - 1) * p + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[k * p] = F.pow(c, p)
        absprec = None if self.absprec is None else self.absprec * p
        if not self.coeffs and self.absprec is not None:
            return LaurentElem(F, 0, (), absprec)
        return LaurentElem(F, self.val * p, out, absprec)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentElem)
            and self.field == other.field
            and self.val == other.val
            and self.coeffs == other.coeffs
            and self.absprec == other.absprec
        )

    def agrees_with(self, other: "LaurentElem") -> bool:
        """Equality up to the smaller of the two precisions."""
        diff = self - other
        return diff.is_zero()

    def __hash__(self):
        return hash((self.val, self.coeffs, self.absprec))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                e = self.val + k
                terms.append(f"{c}*t^{e}" if e else str(c))
        body = " + ".join(terms) or "0"
        tail = "" if self.absprec is None else f" + O(t^{self.absprec})"
        return f"LaurentElem({body}{tail})"


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _series_inverse(F, coeffs: Sequence[int], n: int) -> list[int]:
    """First n coefficients of 1 / sum coeffs[k] t^k (coeffs[0] != 0)."""
    c0inv = F.inv(coeffs[0])
    out = [0] * n
    for k in range(n):
        acc = 1 if k == 0 else 0
        for i in range(1, min(k, len(coeffs) - 1) + 1):
            acc = F.sub(acc, F.mul(coeffs[i], out[k - i]))
        out[k] = F.mul(acc, c0inv)
    return out


def sgn_and_one_unit_infty(a: Poly, prec: int | None = None) -> tuple[int, LaurentElem]:
    """(sgn(a), <a>_inf) with a = sgn(a) * theta^deg(a) * <a>_inf; exact unless ``prec`` is given."""
    if a.is_zero():
        raise NonUnitError("sgn is undefined at zero")
    F = a.field
    s = a.lc
    sinv = F.inv(s)
    u = LaurentElem(F, 0, [F.mul(sinv, c) for c in reversed(a.coeffs)])
    if prec is not None:
        u = u.truncate(prec)
    return s, u


def laurent_pow_zp(u: LaurentElem, y: ZpApprox, prec: int | None = None) -> LaurentElem:
    """u^y for a one-unit at infinity; precision rules as in :func:`padic_pow_zp`."""
    F = u.field
    p = F.p
    if y.p != p:
        raise FieldMismatchError(f"exponent lives in Z_{y.p}, not Z_{p}")
    if u.val != 0 or not u.coeffs or u.coeffs[0] != 1:
        raise NonUnitError("Z_p powers are defined only for one-units")
    cap = y.modulus if u.absprec is None else min(u.absprec, y.modulus)
    if prec is None:
        prec = cap
    elif prec > y.modulus:
        raise PrecisionError(
            f"precision {prec} needs {digits_needed(p, prec)} exponent digits, only {y.m} known"
        )
    elif u.absprec is not None and prec > u.absprec:
        raise PrecisionError(f"base is only known to precision {u.absprec}")
    base = u.truncate(prec)
    result = LaurentElem.one(F).truncate(prec)
    power = 1
    for digit in y.digits():
        if power >= prec:
            break
        if digit:
            result = result * (base ** digit)
        base = base.frobenius().truncate(prec)
        power *= p
    return result
