"""Gamma_n = U_1 / U_{n+1}, the group ring F_p[Gamma_n] and Stickelberger series modulo p.

Gamma_n is represented by the q^(dn) polynomials ``1 + pi * t`` with
deg t < dn, sorted by (degree, coefficients).  A group-ring element is a
dense vector of residue-field codes indexed by that order.

The character chi = omega~^i is applied inside each Euler factor: the
Frobenius at q decomposes as delta * gamma with delta in (A/pi)^* and gamma
in Gamma_n, and delta contributes the scalar delta^(-i).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Poly,
    PrimeData,
    ResidueField,
    batch_mul,
    batch_mulmod,
    batch_reduce,
    irreducibles_of_degree,
    poly_matrix,
    row_poly,
)
from .errors import ConfigError, DegreeWindowError, DivisionRemainderError, FieldMismatchError, NonUnitError
from .goss import is_even_index
from .local import PadicElem, one_unit_part, teichmuller_residue


class GammaGroup:
    """The finite group Gamma_n with cached multiplication permutations."""

    def __init__(self, prime: PrimeData, n: int):
        if n < 0:
            raise ConfigError("level must be non-negative")
        F = prime.field
        self.prime, self.n, self.field = prime, n, F
        self.width = prime.d * (n + 1)
        self.modulus = prime.power(n + 1)
        q = F.q
        count = q ** (prime.d * n)
        idx = np.arange(count, dtype=np.int64)
        T = np.zeros((count, max(prime.d * n, 1)), dtype=np.int64)
        for k in range(prime.d * n):
            T[:, k] = (idx // q ** k) % q
        rows = batch_mul(F, T, np.asarray(prime.pi.coeffs, dtype=np.int64))
        rows = _pad(rows, self.width)
        rows[:, 0] = F.vadd(rows[:, 0], np.ones(count, dtype=np.int64))
        reps = sorted((row_poly(F, r) for r in rows), key=Poly.sort_key)
        self.reps: list[Poly] = reps
        self.rows = poly_matrix(reps, self.width)
        self._weights = q ** np.arange(self.width, dtype=np.int64)
        self._lookup = np.full(q ** self.width, -1, dtype=np.int64)
        self._lookup[self.rows @ self._weights] = np.arange(count)
        self.identity = 0
        self._perm: dict[int, np.ndarray] = {}

    @property
    def order(self) -> int:
        return len(self.reps)

    def indices_of_rows(self, rows: np.ndarray) -> np.ndarray:
        out = self._lookup[_pad(rows, self.width) @ self._weights]
        if (out < 0).any():
            raise NonUnitError("element is not congruent to 1 modulo pi")
        return out

    def index(self, a: Poly) -> int:
        r = a % self.modulus
        return int(self.indices_of_rows(poly_matrix([r], self.width))[0])

    def perm(self, g: int) -> np.ndarray:
        """perm(g)[h] is the index of gamma_g * gamma_h."""
        if g not in self._perm:
            prod = batch_mulmod(self.field, self.rows, self.rows[g], self.modulus.coeffs)
            self._perm[g] = self.indices_of_rows(prod)
        return self._perm[g]

    def mul(self, g: int, h: int) -> int:
        return int(self.perm(g)[h])

    def inverse(self, g: int) -> int:
        return int(np.nonzero(self.perm(g) == self.identity)[0][0])

    def projection(self) -> np.ndarray:
        """Index map Gamma_n -> Gamma_{n-1} (reduction modulo pi^n)."""
        if self.n == 0:
            raise ConfigError("Gamma_0 has no lower level")
        lower = gamma_group(self.prime, self.n - 1)
        reduced = batch_reduce(self.field, self.rows, lower.modulus.coeffs)
        return lower.indices_of_rows(reduced)


def _pad(rows: np.ndarray, width: int) -> np.ndarray:
    if rows.shape[1] >= width:
        return np.ascontiguousarray(rows[:, :width])
    out = np.zeros((rows.shape[0], width), dtype=np.int64)
    out[:, : rows.shape[1]] = rows
    return out


@functools.lru_cache(maxsize=32)
def gamma_group(prime: PrimeData, n: int) -> GammaGroup:
    return GammaGroup(prime, n)


class GroupRingElem:
    """Element of F_p[Gamma_n] stored densely; ``terms()`` gives the nonzero support."""

    __slots__ = ("group", "vec")

    def __init__(self, group: GammaGroup, vec: np.ndarray):
        self.group = group
        self.vec = vec

    @property
    def level(self) -> int:
        return self.group.n

    @property
    def ring(self) -> ResidueField:
        return self.group.prime.residue_field

    @classmethod
    def zero(cls, group: GammaGroup) -> "GroupRingElem":
        return cls(group, np.zeros(group.order, dtype=np.int64))

    @classmethod
    def basis(cls, group: GammaGroup, g: int, c: int = 1) -> "GroupRingElem":
        vec = np.zeros(group.order, dtype=np.int64)
        vec[g] = c
        return cls(group, vec)

    @classmethod
    def one(cls, group: GammaGroup) -> "GroupRingElem":
        return cls.basis(group, group.identity)

    @classmethod
    def norm_element(cls, group: GammaGroup) -> "GroupRingElem":
        """Sum of all group elements."""
        return cls(group, np.ones(group.order, dtype=np.int64))

    @classmethod
    def from_terms(cls, group: GammaGroup, terms) -> "GroupRingElem":
        R = group.prime.residue_field
        out = cls.zero(group)
        for rep, c in terms:
            out = out + cls.basis(group, group.index(rep), c % R.order)
        return out

    def _check(self, other: "GroupRingElem") -> None:
        if not isinstance(other, GroupRingElem):
            raise TypeError(f"expected GroupRingElem, got {type(other).__name__}")
        if other.group is not self.group:
            if other.group.n != self.group.n:
                raise FieldMismatchError(f"group-ring levels differ: {self.level} vs {other.level}")
            if other.group.prime != self.group.prime:
                raise FieldMismatchError("group rings over different primes")

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        return GroupRingElem(self.group, self.ring.vadd(self.vec, other.vec))

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        return GroupRingElem(self.group, self.ring.vsub(self.vec, other.vec))

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.group, self.ring.vneg(self.vec))

    def scale(self, c: int) -> "GroupRingElem":
        R = self.ring
        return GroupRingElem(self.group, R.vmul(self.vec, np.full_like(self.vec, c % R.order)))

    def shift(self, g: int) -> "GroupRingElem":
        """Multiply by the group element with index g."""
        out = np.empty_like(self.vec)
        out[self.group.perm(g)] = self.vec
        return GroupRingElem(self.group, out)

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        R = self.ring
        out = np.zeros_like(self.vec)
        for g in np.nonzero(self.vec)[0]:
            c = int(self.vec[g])
            contrib = np.empty_like(other.vec)
            contrib[self.group.perm(int(g))] = R.vmul(other.vec, np.full_like(other.vec, c))
            out = R.vadd(out, contrib)
        return GroupRingElem(self.group, out)

    def project(self) -> "GroupRingElem":
        """Push forward along Gamma_n -> Gamma_{n-1}."""
        lower = gamma_group(self.group.prime, self.group.n - 1)
        proj = self.group.projection()
        R = self.ring
        digits = np.zeros((lower.order, R.ndigits), dtype=np.int64)
        np.add.at(digits, proj, R._digits[self.vec])
        return GroupRingElem(lower, (digits % R.p) @ R._weights)

    def augmentation(self) -> int:
        return int(self.ring.vsum(self.vec, axis=0))

    def is_zero(self) -> bool:
        return not self.vec.any()

    def terms(self) -> list[tuple[Poly, int]]:
        return [(self.group.reps[g], int(self.vec[g])) for g in np.nonzero(self.vec)[0]]

    def scalar(self) -> int:
        """The coefficient of the identity."""
        return int(self.vec[self.group.identity])

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElem)
            and other.group.n == self.group.n
            and other.group.prime == self.group.prime
            and np.array_equal(self.vec, other.vec)
        )

    def __hash__(self):
        return hash((self.group.n, self.vec.tobytes()))

    def __repr__(self):
        parts = [f"{c}*[{rep}]" for rep, c in self.terms()]
        return f"GroupRingElem(level={self.level}: {' + '.join(parts) or '0'})"


# ---------------------------------------------------------------------------
# Frobenius elements


def frobenius_decompose(prime: PrimeData, pi_q: Poly, n: int) -> tuple[int, Poly]:
    """(delta, gamma): delta the residue of omega(pi_q), gamma = pi_q / omega(pi_q) mod pi^(n+1)."""
    a = PadicElem(pi_q, n + 1, prime)
    if not a.is_unit():
        raise NonUnitError(f"{pi_q} is divisible by {prime.pi}")
    delta = a.residue()
    return delta, one_unit_part(a).rep


def _frobenius_batch(prime: PrimeData, n: int, primes: list[Poly]) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised decomposition: residue codes and Gamma_n indices of the gamma parts."""
    group = gamma_group(prime, n)
    F = prime.field
    R = prime.residue_field
    rows = poly_matrix(primes)
    res = batch_reduce(F, rows, prime.pi.coeffs)
    deltas = res @ (F.q ** np.arange(prime.d, dtype=np.int64))
    if (deltas == 0).any():
        raise NonUnitError("a prime in the list is divisible by pi")
    lifts_inv = np.zeros((R.order, group.width), dtype=np.int64)
    for r in np.unique(deltas):
        w = teichmuller_residue(prime, int(r), n + 1).inverse()
        lifts_inv[r, : len(w.rep.coeffs)] = w.rep.coeffs
    reduced = batch_reduce(F, rows, group.modulus.coeffs)
    gam = batch_mulmod(F, reduced, lifts_inv[deltas], group.modulus.coeffs)
    return deltas, group.indices_of_rows(gam)


# ---------------------------------------------------------------------------
# Stickelberger series


def default_cutoff(prime: PrimeData, n: int) -> int:
    """d(n+1) + 2: the conductor degree bound plus two slack coefficients."""
    return prime.d * (n + 1) + 2


@dataclass
class ThetaSeries:
    """Theta_n(X, omega~^i) modulo p and X^(D+1)."""

    prime: PrimeData
    level: int
    char_index: int
    cutoff: int
    coeffs: list[GroupRingElem]
    factors: list[tuple[int, int, int]] = field(default_factory=list, repr=False)

    @property
    def group(self) -> GammaGroup:
        return gamma_group(self.prime, self.level)

    @property
    def is_even(self) -> bool:
        return is_even_index(self.char_index, self.prime.field.q)

    @property
    def window_start(self) -> int:
        return self.prime.d * (self.level + 1)

    def coeff(self, k: int) -> GroupRingElem:
        return self.coeffs[k]

    def window_check(self) -> None:
        """Raise if a coefficient of degree in [d(n+1), D] is nonzero."""
        for k in range(self.window_start, self.cutoff + 1):
            if not self.coeffs[k].is_zero():
                raise DegreeWindowError(
                    f"coefficient of X^{k} is nonzero (level {self.level}, i = {self.char_index}, D = {self.cutoff})"
                )

    def divide_one_minus_x(self) -> tuple[list[GroupRingElem], GroupRingElem]:
        """Quotient and remainder of the truncated polynomial by (1 - X)."""
        quotient = []
        acc = GroupRingElem.zero(self.group)
        for k in range(self.cutoff):
            acc = acc + self.coeffs[k]
            quotient.append(acc)
        remainder = acc + self.coeffs[self.cutoff]
        return quotient, remainder

    def project(self) -> "ThetaSeries":
        return ThetaSeries(
            self.prime, self.level - 1, self.char_index, self.cutoff, [c.project() for c in self.coeffs]
        )

    def times_euler_factors(self) -> list[GroupRingElem]:
        """Multiply back by every (1 - c g X^k); the result should be 1 mod X^(D+1)."""
        out = list(self.coeffs)
        for c, g, k in self.factors:
            for t in range(self.cutoff, k - 1, -1):
                out[t] = out[t] - out[t - k].shift(g).scale(c)
        return out


def theta_series(prime: PrimeData, n: int, i: int, D: int) -> ThetaSeries:
    """Product over monic irreducible q != pi, deg q <= D, of (1 - delta^(-i) gamma^(-1) X^deg q)^(-1)."""
    if D < 1:
        raise ConfigError("the X-cutoff D must be >= 1")
    group = gamma_group(prime, n)
    R = prime.residue_field
    Q = prime.unit_group_order
    i %= Q
    coeffs = [GroupRingElem.one(group)] + [GroupRingElem.zero(group) for _ in range(D)]
    factors = []
    for k in range(1, D + 1):
        primes = [f for f in irreducibles_of_degree(prime.field, k) if f != prime.pi]
        if not primes:
            continue
        deltas, gammas = _frobenius_batch(prime, n, primes)
        for delta, g in zip(deltas.tolist(), gammas.tolist()):
            c = R.pow(delta, -i)
            g_inv = group.inverse(g)
            factors.append((c, g_inv, k))
            for t in range(k, D + 1):
                coeffs[t] = coeffs[t] + coeffs[t - k].shift(g_inv).scale(c)
    return ThetaSeries(prime, n, i, D, coeffs, factors)


def theta_sharp_at_one(prime: PrimeData, n: int, i: int, D: int | None = None) -> GroupRingElem:
    """Theta_n^#(1, omega~^i) modulo p, with the degree-window and remainder guards."""
    Q = prime.unit_group_order
    if i % Q == 0:
        raise ConfigError("the trivial character i = 0 is not supported here")
    if D is None:
        D = default_cutoff(prime, n)
    if D < prime.d * (n + 1):
        raise ConfigError(f"cutoff D = {D} is below the window start d(n+1) = {prime.d * (n + 1)}")
    series = theta_series(prime, n, i, D)
    return sharp_value(series)


def sharp_value(series: ThetaSeries) -> GroupRingElem:
    series.window_check()
    if not series.is_even:
        total = GroupRingElem.zero(series.group)
        for c in series.coeffs:
            total = total + c
        return total
    quotient, remainder = series.divide_one_minus_x()
    if not remainder.is_zero():
        raise DivisionRemainderError(
            f"(1 - X) does not divide Theta (level {series.level}, i = {series.char_index})"
        )
    total = GroupRingElem.zero(series.group)
    for c in quotient:
        total = total + c
    return total


@dataclass(frozen=True)
class NotFound:
    """No level up to ``n_max`` gave a nonzero value."""

    n_max: int


def n_invariant(prime: PrimeData, i: int, n_max: int, D: int | None = None) -> int | NotFound:
    """Least level n <= n_max with Theta_n^#(1, omega~^i) nonzero modulo p."""
    Q = prime.unit_group_order
    if not 1 <= i <= Q - 1:
        raise ConfigError(f"i must lie in [1, {Q - 1}]")
    for n in range(n_max + 1):
        cutoff = default_cutoff(prime, n) if D is None else D
        if not theta_sharp_at_one(prime, n, i, cutoff).is_zero():
            return n
    return NotFound(n_max)
