"""Power sums, Z(X, j), Bernoulli-Goss numbers, zeta at infinity and p-adic L-functions.

Two independent routes to the p-adic L-function are provided:

* :func:`lfunction_exact` picks an integer j in the right residue classes
  (CRT) and reduces ``(1 - pi^j X^d) Z(X, j)``; it only uses power sums.
* :func:`lfunction_direct` sums ``omega^i(a) <a>^y`` over monic a prime to pi,
  one polynomial at a time, through the scalar routines of :mod:`.local`.

They share no arithmetic beyond the polynomial layer, so agreement between
them is a meaningful check.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .algebra import (
    FiniteField,
    Poly,
    PrimeData,
    batch_mul,
    batch_powmod,
    enumerate_monic,
    int_log_floor,
    monic_irreducibles,
    monic_matrix,
    row_poly,
)
from .errors import ConfigError, DivergenceError, PrecisionError
from .local import (
    LaurentElem,
    PadicElem,
    ZpApprox,
    laurent_pow_zp,
    one_unit_part,
    padic_pow_zp,
    sgn_and_one_unit_infty,
    teichmuller,
)


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class CharacterIndex:
    """Exponent i of omega^i, taken modulo q^d - 1."""

    i: int
    q: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "i", self.i % self.order)

    @classmethod
    def for_prime(cls, prime: PrimeData, i: int) -> "CharacterIndex":
        return cls(i, prime.field.q, prime.d)

    @property
    def order(self) -> int:
        return self.q ** self.d - 1

    @property
    def is_even(self) -> bool:
        return self.i % (self.q - 1) == 0

    @property
    def is_odd(self) -> bool:
        return not self.is_even

    def __neg__(self) -> "CharacterIndex":
        return CharacterIndex(-self.i, self.q, self.d)


def is_even_index(i: int, q: int) -> bool:
    return i % (q - 1) == 0


# ---------------------------------------------------------------------------
# polynomials in X over an arbitrary coefficient ring


def _coeff_is_zero(c: Any) -> bool:
    if isinstance(c, LaurentElem):
        return c.is_exact_zero()
    return c.is_zero()


def _int_scale(c: Any, k: int) -> Any:
    """k * c for an integer k, via the prime subfield."""
    if isinstance(c, Poly):
        return c.scale(c.field.from_int(k))
    if isinstance(c, PadicElem):
        return c.scale(c.prime.field.from_int(k))
    return c.scale(k % c.field.p if hasattr(c, "field") else k)


class XPoly:
    """Element of R[X] with coefficients in a ring R (Poly, PadicElem, LaurentElem, ...)."""

    def __init__(self, coeffs: Sequence[Any], zero: Any):
        cs = list(coeffs)
        while cs and _coeff_is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.zero = zero

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Any:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.zero

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: "XPoly") -> "XPoly":
        n = max(len(self), len(other))
        return XPoly([self.coeff(k) + other.coeff(k) for k in range(n)], self.zero)

    def __sub__(self, other: "XPoly") -> "XPoly":
        n = max(len(self), len(other))
        return XPoly([self.coeff(k) - other.coeff(k) for k in range(n)], self.zero)

    def __mul__(self, other: "XPoly") -> "XPoly":
        if not self.coeffs or not other.coeffs:
            return XPoly([], self.zero)
        out = [self.zero] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return XPoly(out, self.zero)

    def truncate(self, D: int) -> "XPoly":
        return XPoly(self.coeffs[: D + 1], self.zero)

    def map(self, fn: Callable[[Any], Any], zero: Any) -> "XPoly":
        return XPoly([fn(c) for c in self.coeffs], zero)

    def at_one(self) -> Any:
        acc = self.zero
        for c in self.coeffs:
            acc = acc + c
        return acc

    def derivative_at_one(self) -> Any:
        acc = self.zero
        for k, c in enumerate(self.coeffs):
            if k:
                acc = acc + _int_scale(c, k)
        return acc

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"XPoly({list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# power sums


def simon_degree(q: int, j: int) -> int:
    """floor(log_q(j + 1)): the largest n for which S_n(j) can be nonzero."""
    return int_log_floor(q, j + 1)


def _sum_rows(F: FiniteField, rows: np.ndarray) -> Poly:
    return row_poly(F, F.vsum(rows, axis=0))


@functools.lru_cache(maxsize=4096)
def power_sum(F: FiniteField, n: int, j: int) -> Poly:
    """S_n(j): sum of a^j over the monic a of degree n (exact)."""
    if n < 0 or j < 0:
        raise ValueError("n and j must be non-negative")
    A = monic_matrix(F, n)
    result = np.zeros((A.shape[0], 1), dtype=np.int64)
    result[:, 0] = 1
    base = A
    k = j
    while k:
        if k & 1:
            result = batch_mul(F, result, base)
        k >>= 1
        if k:
            base = batch_mul(F, base, base)
    return _sum_rows(F, result)


@functools.lru_cache(maxsize=64)
def power_sum_table(F: FiniteField, n: int, jmax: int) -> tuple[Poly, ...]:
    """(S_n(0), ..., S_n(jmax)), built by multiplying all a^(j-1) by a at once."""
    A = monic_matrix(F, n)
    cur = np.ones((A.shape[0], 1), dtype=np.int64)
    out = [_sum_rows(F, cur)]
    for _ in range(jmax):
        cur = batch_mul(F, cur, A)
        out.append(_sum_rows(F, cur))
    return tuple(out)


@functools.lru_cache(maxsize=4096)
def power_sum_mod(prime: PrimeData, n: int, j: int, M: int) -> Poly:
    """S_n(j) modulo pi^M, with every power taken modulo pi^M."""
    F = prime.field
    mod = prime.power(M).coeffs
    rows = batch_powmod(F, monic_matrix(F, n), j, mod)
    return _sum_rows(F, rows)


def zeta_poly(F: FiniteField, j: int) -> XPoly:
    """Z(X, j) = sum_n S_n(j) X^n over A (the sum stops at floor(log_q(j+1)))."""
    if j < 0:
        raise ValueError("j must be non-negative")
    N = simon_degree(F.q, j)
    return XPoly([power_sum(F, n, j) for n in range(N + 1)], F.zero())


def _beta_from_sums(F: FiniteField, j: int, sums: Sequence[Poly]) -> Poly:
    if j == 0 or j % (F.q - 1):
        acc = F.zero()
        for s in sums:
            acc = acc + s
        return acc
    acc = F.zero()
    for n, s in enumerate(sums):
        acc = acc + s.scale(F.from_int(n))
    return -acc


def bernoulli_goss(F: FiniteField, j: int) -> Poly:
    """beta(j): Z(1, j), or -Z'(1, j) when j >= 1 and (q-1) | j."""
    return _beta_from_sums(F, j, zeta_poly(F, j).coeffs)


def bernoulli_table(F: FiniteField, jmax: int) -> list[Poly]:
    """[beta(0), ..., beta(jmax)] using incremental power-sum tables."""
    N = simon_degree(F.q, jmax)
    tables = [power_sum_table(F, n, jmax) for n in range(N + 1)]
    out = []
    for j in range(jmax + 1):
        sums = [tables[n][j] for n in range(simon_degree(F.q, j) + 1)]
        out.append(_beta_from_sums(F, j, sums))
    return out


def zeta_neg(F: FiniteField, j: int) -> Poly:
    """zeta_A(-j) = Z(1, j)."""
    return zeta_poly(F, j).at_one()


# ---------------------------------------------------------------------------
# zeta at infinity


def infty_block_sum(F: FiniteField, n: int, y: ZpApprox, prec: int) -> LaurentElem:
    """sum over a in A_{+,n} of <a>_inf^y, known modulo t^prec (t = 1/theta)."""
    if prec > y.modulus:
        raise PrecisionError(f"precision {prec} exceeds {y.p}^{y.m} = {y.modulus}")
    if prec <= 0:
        return LaurentElem.zero(F, max(prec, 0))
    # <a>_inf = 1 + c_{n-1} t + ... + c_0 t^n: the coefficient row reversed
    rows = monic_matrix(F, n)[:, ::-1]
    modulus = [0] * prec + [1]
    powered = batch_powmod(F, np.ascontiguousarray(rows), y.value, modulus)
    total = F.vsum(powered, axis=0)
    return LaurentElem(F, 0, [int(c) for c in total], prec)


def convzeta_bound(p: int, n: int, v: int) -> int:
    """Lower bound for the valuation of the degree-n block of the rearranged zeta series."""
    return p ** (n - 1) - n * v


def tail_start(p: int, v: int, target: int) -> int:
    """Least n* >= 1 such that every block n >= n* has bound >= target."""
    n = 1
    # the bound is convex in n and increasing once p^(n-1) (p - 1) >= v
    while not (convzeta_bound(p, n, v) >= target and p ** (n - 1) * (p - 1) >= v):
        n += 1
    while n > 1 and convzeta_bound(p, n - 1, v) >= target:
        n -= 1
    return n


def zeta_infty(x: LaurentElem, y: ZpApprox, target: int) -> LaurentElem:
    """zeta_A(x, y) = sum_n (sum_{A_{+,n}} <a>^(-y)) x^(-n), certified modulo t^target.

    The rearranged series converges for every nonzero x; blocks from n* on are
    dropped because their valuation is at least ``target``.
    """
    if not x.coeffs:
        raise DivergenceError("x must be a nonzero Laurent series")
    F = x.field
    p = F.p
    v = x.val
    n_star = tail_start(p, v, target)
    reach = target + n_star * max(v, 0)
    x_inv = x.inverse(reach if x.exact and len(x.coeffs) > 1 else None)
    if x_inv.absprec is not None:
        x_inv = x_inv.truncate(min(x_inv.absprec, -v + reach))
    neg_y = -y
    total = LaurentElem.one(F)
    x_pow = LaurentElem.one(F)
    for n in range(1, n_star):
        x_pow = x_pow * x_inv
        need = target + n * v
        if need > y.modulus:
            raise PrecisionError(
                f"block {n} needs <a>^y modulo t^{need}, but y is only known modulo {y.p}^{y.m}"
            )
        block = infty_block_sum(F, n, neg_y, max(need, 0))
        total = total + block * x_pow
    if total.absprec is None or total.absprec > target:
        total = total.truncate(target)
    return total


@dataclass
class InterpolationReport:
    agree: bool
    precision: int
    target: int
    euler_side: LaurentElem
    zeta_side: LaurentElem

    @property
    def passed(self) -> bool:
        return self.agree and self.precision >= self.target


def euler_product_infty(prime: PrimeData, x: LaurentElem, y: ZpApprox, D: int, prec: int) -> LaurentElem:
    """Product over monic irreducible q != pi, deg q <= D, of (1 - <q>^(-y) x^(-deg q))^(-1)."""
    F = prime.field
    one = LaurentElem.one(F)
    x_inv = x.inverse(prec if x.exact and len(x.coeffs) > 1 else None)
    neg_y = -y
    x_pows = {}
    result = one
    for pq in monic_irreducibles(F, D):
        if pq == prime.pi:
            continue
        k = pq.degree
        if k not in x_pows:
            x_pows[k] = x_inv ** k
        _, u = sgn_and_one_unit_infty(pq)
        w = laurent_pow_zp(u, neg_y, min(prec, y.modulus))
        factor = (one - w * x_pows[k]).inverse(prec)
        result = result * factor
    if result.absprec is None or result.absprec > prec:
        result = result.truncate(prec)
    return result


def infinity_interpolation_check(
    prime: PrimeData, x: LaurentElem, y: ZpApprox, D: int, target: int
) -> InterpolationReport:
    """Compare the truncated Euler product with (1 - pi^(-s)) zeta_A(s), s = (x, y)."""
    if not x.coeffs or x.val >= 0:
        raise DivergenceError("the Euler-product tail is only certified for v_inf(x) < 0")
    F = prime.field
    tail = (D + 1) * (-x.val)
    prec = min(target, tail)
    lhs = euler_product_infty(prime, x, y, D, prec)
    zeta = zeta_infty(x, y, prec)
    _, u = sgn_and_one_unit_infty(prime.pi)
    w = laurent_pow_zp(u, -y, min(prec, y.modulus))
    x_inv = x.inverse(prec if x.exact and len(x.coeffs) > 1 else None)
    rhs = (LaurentElem.one(F) - w * x_inv ** prime.d) * zeta
    achieved = min(a for a in (lhs.absprec, rhs.absprec, tail) if a is not None)
    diff = lhs - rhs
    agree = diff.is_zero()
    return InterpolationReport(agree, achieved, target, lhs, rhs)


# ---------------------------------------------------------------------------
# p-adic L-functions


def crt_exponent(q: int, d: int, i: int, y: ZpApprox) -> int:
    """Least j >= 1 with j = y mod p^m and j = i mod q^d - 1."""
    Q = q ** d - 1
    P = y.modulus
    # gcd(p^m, q^d - 1) = 1
    k = ((i - y.value) * pow(P, -1, Q)) % Q if Q > 1 else 0
    j = y.value + P * k
    return j if j >= 1 else j + P * Q


def _check_digits(y: ZpApprox, M: int, prime: PrimeData) -> None:
    if y.p != prime.field.p:
        raise ConfigError(f"exponent lives in Z_{y.p}, not Z_{prime.field.p}")
    if M < 1:
        raise PrecisionError("precision must be at least 1")
    if M > y.modulus:
        raise PrecisionError(f"precision {M} exceeds {y.p}^{y.m} = {y.modulus}")


def lfunction_exact(prime: PrimeData, i: int, y: ZpApprox, M: int) -> XPoly:
    """L_p(X, y, omega^i) modulo pi^M via (1 - pi^j X^d) Z(X, j) for the CRT exponent j."""
    _check_digits(y, M, prime)
    j = crt_exponent(prime.field.q, prime.d, i, y)
    return lfunction_from_exponent(prime, j, M)


def lfunction_from_exponent(prime: PrimeData, j: int, M: int) -> XPoly:
    """(1 - pi^j X^d) Z(X, j) reduced modulo pi^M."""
    F, d = prime.field, prime.d
    N = simon_degree(F.q, j)
    sums = [power_sum_mod(prime, n, j, M) for n in range(N + 1)]
    pij = prime.pi.pow_mod(j, prime.power(M))
    coeffs = []
    for n in range(N + d + 1):
        c = sums[n] if n <= N else F.zero()
        if n >= d:
            c = c - pij * sums[n - d]
        coeffs.append(PadicElem(c, M, prime))
    return XPoly(coeffs, PadicElem.zero(prime, M))


class _DirectCache:
    """Per (prime, M) cache of (residue, <a>) for every monic a prime to pi, by degree."""

    def __init__(self, prime: PrimeData, M: int):
        self.prime, self.M = prime, M
        self.units: dict[int, list[tuple[int, PadicElem]]] = {}
        self.omega: dict[int, PadicElem] = {}
        self.powers: dict[tuple[int, int, int], list[PadicElem]] = {}

    def degree(self, n: int) -> list[tuple[int, PadicElem]]:
        if n not in self.units:
            F = self.prime.field
            R = self.prime.residue_field
            out = []
            for a in enumerate_monic(F, n):
                r = R.from_poly(a)
                if r == 0:
                    continue
                elem = PadicElem(a, self.M, self.prime)
                if r not in self.omega:
                    self.omega[r] = teichmuller(elem)
                out.append((r, one_unit_part(elem)))
            self.units[n] = out
        return self.units[n]

    def one_unit_powers(self, n: int, y: ZpApprox) -> list[PadicElem]:
        key = (n, y.value, y.m)
        if key not in self.powers:
            self.powers[key] = [padic_pow_zp(u, y, self.M) for _, u in self.degree(n)]
        return self.powers[key]


@functools.lru_cache(maxsize=32)
def _direct_cache(prime: PrimeData, M: int) -> _DirectCache:
    return _DirectCache(prime, M)


def lfunction_direct(prime: PrimeData, i: int, y: ZpApprox, M: int, D: int) -> XPoly:
    """Coefficients sum_{a in A_{+,n}, pi not | a} omega^i(a) <a>^y mod pi^M for n <= D."""
    _check_digits(y, M, prime)
    cache = _direct_cache(prime, M)
    Q = prime.unit_group_order
    i %= Q
    coeffs = []
    for n in range(D + 1):
        acc = PadicElem.zero(prime, M)
        omega_pow: dict[int, PadicElem] = {}
        for (r, _), u_y in zip(cache.degree(n), cache.one_unit_powers(n, y)):
            if r not in omega_pow:
                omega_pow[r] = cache.omega[r] ** i
            acc = acc + omega_pow[r] * u_y
        coeffs.append(acc)
    return XPoly(coeffs, PadicElem.zero(prime, M))


def lfunction_special(prime: PrimeData, i: int, y: ZpApprox, M: int) -> tuple[PadicElem, PadicElem]:
    """(L_p(1, y, omega^i), d/dX L_p(X, y, omega^i) at X = 1), both modulo pi^M."""
    L = lfunction_exact(prime, i, y, M)
    return L.at_one(), L.derivative_at_one()
