"""Exact arithmetic in F_q, A = F_q[theta], residue fields A/p and the Carlitz module.

Finite field elements are plain ints in ``range(q)``: the base-p digits of the
int are the coordinates in the power basis of the defining modulus.  Addition
is therefore digitwise mod p in every field used here (including the residue
fields A/p, whose elements ``sum c_k q^k`` encode residue polynomials), which
lets the vectorised kernels share one code path.

Polynomials are immutable :class:`Poly` values with little-endian coefficient
tuples and no trailing zeros.  The ``batch_*`` functions work on 2-d numpy
arrays whose rows are polynomials; they back the enumerations over A_{+,n}.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ConfigError, FieldMismatchError

# Full q x q tables are kept for every field; this caps residue fields too.
MAX_FIELD_ORDER = 1024

THETA = "θ"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def int_log_floor(base: int, x: int) -> int:
    """Largest k with base**k <= x (x >= 1)."""
    if x < 1:
        raise ValueError("x must be positive")
    k, acc = 0, base
    while acc <= x:
        k += 1
        acc *= base
    return k


def int_log_ceil(base: int, x: int) -> int:
    """Smallest k with base**k >= x (x >= 1)."""
    if x < 1:
        raise ValueError("x must be positive")
    k, acc = 0, 1
    while acc < x:
        k += 1
        acc *= base
    return k


class TableField:
    """A finite field of prime characteristic with elements ``0..order-1``.

    Subclasses supply ``_raw_mul``; everything else is table driven.
    """

    p: int
    order: int

    def _init_tables(self, order: int, p: int) -> None:
        if order > MAX_FIELD_ORDER:
            raise ConfigError(f"field of order {order} exceeds the supported maximum {MAX_FIELD_ORDER}")
        self.order = order
        self.p = p
        k = int_log_floor(p, order)
        self.ndigits = k
        idx = np.arange(order, dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p
        self._weights = weights
        self._digits = digits
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        sub = add[:, neg]

        gen, exp = self._find_generator()
        log = np.zeros(order, dtype=np.int64)
        exp_np = np.array(exp, dtype=np.int64)
        log[exp_np] = np.arange(order - 1, dtype=np.int64)
        mul = np.zeros((order, order), dtype=np.int64)
        nz = np.arange(1, order)
        mul[1:, 1:] = exp_np[(log[nz][:, None] + log[nz][None, :]) % (order - 1)]
        inv = np.zeros(order, dtype=np.int64)
        inv[1:] = exp_np[(-log[nz]) % (order - 1)]

        self.generator = gen
        self.add_np, self.sub_np, self.mul_np = add, sub, mul
        self.neg_np, self.inv_np = neg, inv
        self._exp, self._log = exp, log.tolist()
        self._add = add.tolist()
        self._sub = sub.tolist()
        self._mul = mul.tolist()
        self._neg = neg.tolist()
        self._inv = inv.tolist()

    def _raw_mul(self, a: int, b: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def _find_generator(self) -> tuple[int, list[int]]:
        n = self.order - 1
        for g in range(2 if self.order > 2 else 1, self.order):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._raw_mul(x, g)
            if len(powers) == n:
                return g, powers
        raise ConfigError("no generator found; modulus is not irreducible")

    # scalar arithmetic
    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F."""
        return n % self.p

    def elements(self) -> range:
        return range(self.order)

    # vectorised arithmetic on int arrays
    @property
    def is_prime_field(self) -> bool:
        return self.order == self.p

    def vadd(self, a, b):
        if self.is_prime_field:
            return (a + b) % self.p
        return self.add_np[a, b]

    def vsub(self, a, b):
        if self.is_prime_field:
            return (a - b) % self.p
        return self.sub_np[a, b]

    def vmul(self, a, b):
        if self.is_prime_field:
            return (a * b) % self.p
        return self.mul_np[a, b]

    def vneg(self, a):
        if self.is_prime_field:
            return (-a) % self.p
        return self.neg_np[a]

    def vsum(self, a: np.ndarray, axis: int = 0) -> np.ndarray:
        if self.is_prime_field:
            return a.sum(axis=axis) % self.p
        axis = axis % a.ndim
        return (self._digits[a].sum(axis=axis) % self.p) @ self._weights


class FiniteField(TableField):
    """F_q with q = p^e; for e > 1 the modulus (monic, degree e, over F_p) is required.

    >>> F = FiniteField(3)
    >>> F.mul(2, 2)
    1
    """

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ConfigError(f"p = {p} is not prime")
        if e < 1:
            raise ConfigError("extension degree must be >= 1")
        if p ** e < 3:
            raise ConfigError("q = p^e must be at least 3")
        if e == 1:
            modulus = (0, 1)
        else:
            if modulus is None:
                raise ConfigError("a modulus is required when e > 1")
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
                raise ConfigError("modulus must be e+1 integers in [0, p), monic")
            if not _is_irreducible_mod_p(modulus, p):
                raise ConfigError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self._key = (p, e, modulus if e > 1 else None)
        self._init_tables(self.q, p)

    def _coords(self, a: int) -> list[int]:
        return [(a // self.p ** k) % self.p for k in range(self.e)]

    def _raw_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return a * b % p
        x, y = self._coords(a), self._coords(b)
        prod = [0] * (2 * e - 1)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] += u * v
        m = self.modulus
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k] % p
            if c:
                for t in range(e):
                    prod[k - e + t] -= c * m[t]
            prod[k] = 0
        return sum((prod[k] % p) * p ** k for k in range(e))

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple(self._coords(a))

    def from_coords(self, coords: Sequence[int]) -> int:
        return sum((c % self.p) * self.p ** k for k, c in enumerate(coords))

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    # convenience constructors
    def poly(self, coeffs: Sequence[int]) -> "Poly":
        return Poly(self, coeffs)

    def theta(self) -> "Poly":
        return Poly._make(self, (0, 1))

    def one(self) -> "Poly":
        return Poly._make(self, (1,))

    def zero(self) -> "Poly":
        return Poly._make(self, ())

    def const(self, c: int) -> "Poly":
        return Poly(self, (c,))


@functools.lru_cache(maxsize=None)
def GF(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> FiniteField:
    """Cached :class:`FiniteField` factory."""
    return FiniteField(p, e, modulus)


def _is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    # brute force: no monic factor of degree <= deg/2 (moduli are tiny)
    n = len(f) - 1
    for k in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = list(tail) + [1]
            r = list(f)
            for top in range(n, k - 1, -1):
                c = r[top] % p
                if c:
                    for t in range(k + 1):
                        r[top - k + t] -= c * g[t]
            if all(x % p == 0 for x in r[:k]):
                return False
    return True


# ---------------------------------------------------------------------------
# polynomials


def _strip(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


# above this size prime-field products go through big-int packing
_KRONECKER_MIN = 48


def _kronecker_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = min(len(a), len(b))
    bound = n * (p - 1) ** 2
    dtype, width = ("<u4", 4) if bound < 2 ** 32 else ("<u8", 8)
    A = int.from_bytes(np.asarray(a, dtype=dtype).tobytes(), "little")
    B = int.from_bytes(np.asarray(b, dtype=dtype).tobytes(), "little")
    size = len(a) + len(b) - 1
    out = np.frombuffer((A * B).to_bytes(size * width, "little"), dtype=dtype)
    return (out.astype(np.int64) % p).tolist()


def _mul_coeffs(F: TableField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if F.is_prime_field:
        p = F.p
        if min(len(a), len(b)) >= _KRONECKER_MIN:
            return _kronecker_mul(a, b, p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [c % p for c in out]
    if min(len(a), len(b)) >= _KRONECKER_MIN:
        A = np.asarray(a, dtype=np.int64)[None, :]
        B = np.asarray(b, dtype=np.int64)
        return batch_mul(F, A, B)[0].tolist()
    mul, add = F._mul, F._add
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return out


class Poly:
    """Element of A = F_q[theta]; coefficients little-endian, no trailing zeros.

    >>> F = GF(3)
    >>> (F.poly([1, 1]) * F.poly([2, 1]))
    Poly(θ^2 + 2)
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        for c in cs:
            if not 0 <= c < field.q:
                raise ValueError(f"coefficient {c} is not an element of {field!r}")
        self.field = field
        self.coeffs = _strip(cs)

    @classmethod
    def _make(cls, field, coeffs: tuple[int, ...]) -> "Poly":
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash(self.coeffs)

    # ring operations
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        F = self.field
        out = list(a)
        if F.is_prime_field:
            p = F.p
            for i, y in enumerate(b):
                out[i] = (out[i] + y) % p
        else:
            add = F._add
            for i, y in enumerate(b):
                out[i] = add[out[i]][y]
        return Poly._make(F, _strip(out))

    def __neg__(self) -> "Poly":
        neg = self.field._neg
        return Poly._make(self.field, tuple(neg[c] for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly._make(self.field, _strip(_mul_coeffs(self.field, self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly._make(self.field, ())
        row = self.field._mul[c]
        return Poly._make(self.field, tuple(row[x] for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by theta^k."""
        if not self.coeffs:
            return self
        return Poly._make(self.field, (0,) * k + self.coeffs)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc))

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        b = other.coeffs
        db = len(b) - 1
        r = list(self.coeffs)
        if len(r) <= db:
            return Poly._make(F, ()), self
        inv_lc = F.inv(b[-1])
        q = [0] * (len(r) - db)
        if F.is_prime_field:
            p = F.p
            for k in range(len(r) - 1, db - 1, -1):
                c = r[k] * inv_lc % p
                if c:
                    q[k - db] = c
                    for t in range(db):
                        r[k - db + t] = (r[k - db + t] - c * b[t]) % p
                r[k] = 0
        else:
            mul, sub = F._mul, F._sub
            for k in range(len(r) - 1, db - 1, -1):
                c = mul[r[k]][inv_lc]
                if c:
                    q[k - db] = c
                    row = mul[c]
                    for t in range(db):
                        r[k - db + t] = sub[r[k - db + t]][row[b[t]]]
                r[k] = 0
        return Poly._make(F, _strip(q)), Poly._make(F, _strip(r[:db]))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly._make(self.field, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def pow_mod(self, k: int, m: "Poly") -> "Poly":
        if k < 0:
            return self.inverse_mod(m).pow_mod(-k, m)
        result = Poly._make(self.field, (1,)) % m
        base = self % m
        while k:
            if k & 1:
                result = (result * base) % m
            k >>= 1
            if k:
                base = (base * base) % m
        return result

    def xgcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """Return (g, s, t) with s*self + t*other = g, g monic (or zero)."""
        F = self.field
        zero, one = Poly._make(F, ()), Poly._make(F, (1,))
        r0, r1, s0, s1, t0, t1 = self, other, one, zero, zero, one
        while r1.coeffs:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.coeffs:
            c = F.inv(r0.lc)
            return r0.scale(c), s0.scale(c), t0.scale(c)
        return r0, s0, t0

    def gcd(self, other: "Poly") -> "Poly":
        return self.xgcd(other)[0]

    def inverse_mod(self, m: "Poly") -> "Poly":
        g, s, _ = self.xgcd(m)
        if g.coeffs != (1,):
            raise ZeroDivisionError("polynomial is not invertible modulo m")
        return s % m

    # substitutions
    def evaluate(self, x: int) -> int:
        """Value at a field element x (Horner)."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose(self, g: "Poly") -> "Poly":
        """self(g)."""
        self._check(g)
        acc = Poly._make(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * g + Poly._make(self.field, (c,) if c else ())
        return acc

    def expand(self, k: int) -> "Poly":
        """Substitute theta -> theta^k."""
        if k < 1:
            raise ValueError("k must be positive")
        if len(self.coeffs) <= 1 or k == 1:
            return self
        out = [0] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Poly._make(self.field, tuple(out))

    def frobenius(self) -> "Poly":
        """self**p, computed coefficientwise."""
        F = self.field
        out = [0] * ((len(self.coeffs) - 1) * F.p + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * F.p] = F.pow(c, F.p)
        return Poly._make(F, tuple(out))

    def derivative(self) -> "Poly":
        F = self.field
        out = [F.mul(F.from_int(k), c) for k, c in enumerate(self.coeffs)][1:]
        return Poly._make(F, _strip(out))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (THETA if k == 1 else f"{THETA}^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# batched kernels (rows of a 2-d int array are polynomials)


def poly_matrix(polys: Sequence[Poly], width: int | None = None) -> np.ndarray:
    if width is None:
        width = max((len(f.coeffs) for f in polys), default=1) or 1
    out = np.zeros((len(polys), width), dtype=np.int64)
    for i, f in enumerate(polys):
        out[i, : len(f.coeffs)] = f.coeffs
    return out


def row_poly(F: FiniteField, row: np.ndarray) -> Poly:
    return Poly._make(F, _strip([int(c) for c in row]))


def batch_mul(F: TableField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise products.  B may be a single polynomial (1-d) or one per row."""
    A = np.atleast_2d(A)
    if B.ndim == 1:
        B = B[None, :]
    la, lb = A.shape[1], B.shape[1]
    N = max(A.shape[0], B.shape[0])
    if la < lb:
        A, B, la, lb = B, A, lb, la
    # loop over the shorter factor
    if F.is_prime_field:
        out = np.zeros((N, la + lb - 1), dtype=np.int64)
        for k in range(lb):
            col = B[:, k : k + 1]
            if col.any():
                out[:, k : k + la] += col * A
        return out % F.p
    digits = F._digits
    out = np.zeros((N, la + lb - 1, F.ndigits), dtype=np.int64)
    mul = F.mul_np
    for k in range(lb):
        col = B[:, k : k + 1]
        if col.any():
            out[:, k : k + la] += digits[mul[col, A]]
    return (out % F.p) @ F._weights


def batch_reduce(F: TableField, A: np.ndarray, modulus: Sequence[int]) -> np.ndarray:
    """Reduce every row modulo a monic polynomial; returns width deg(modulus)."""
    L = len(modulus) - 1
    A = np.array(A, dtype=np.int64, copy=True)
    W = A.shape[1]
    if W <= L:
        out = np.zeros((A.shape[0], L), dtype=np.int64)
        out[:, :W] = A
        return out
    if all(c == 0 for c in modulus[:-1]):
        return A[:, :L]
    m = np.asarray(modulus[:-1], dtype=np.int64)
    nz = np.nonzero(m)[0]
    for k in range(W - 1, L - 1, -1):
        c = A[:, k]
        if not c.any():
            continue
        cols = k - L + nz
        if F.is_prime_field:
            A[:, cols] = (A[:, cols] - c[:, None] * m[nz]) % F.p
        else:
            A[:, cols] = F.sub_np[A[:, cols], F.mul_np[c[:, None], m[nz]]]
    return A[:, :L]


def batch_mulmod(F: TableField, A: np.ndarray, B: np.ndarray, modulus: Sequence[int]) -> np.ndarray:
    return batch_reduce(F, batch_mul(F, A, B), modulus)


def batch_powmod(F: TableField, A: np.ndarray, k: int, modulus: Sequence[int]) -> np.ndarray:
    """Row-wise A**k modulo a monic polynomial (k >= 0)."""
    L = len(modulus) - 1
    base = batch_reduce(F, A, modulus)
    result = np.zeros_like(base)
    result[:, 0] = 1
    result = batch_reduce(F, result, modulus)
    while k:
        if k & 1:
            result = batch_mulmod(F, result, base, modulus)
        k >>= 1
        if k:
            base = batch_mulmod(F, base, base, modulus)
    return result[:, :L]


def monic_matrix(F: FiniteField, n: int) -> np.ndarray:
    """All monic polynomials of degree n as rows, in :func:`enumerate_monic` order."""
    q = F.q
    count = q ** n
    idx = np.arange(count, dtype=np.int64)
    out = np.zeros((count, n + 1), dtype=np.int64)
    for i in range(n):
        out[:, i] = (idx // q ** (n - 1 - i)) % q
    out[:, n] = 1
    return out


def _lex_keys(F: FiniteField, rows: np.ndarray, n: int) -> np.ndarray:
    # inverse of the monic_matrix ordering
    weights = F.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return rows[:, :n] @ weights


# ---------------------------------------------------------------------------
# enumeration and irreducibility


def enumerate_monic(F: FiniteField, n: int) -> Iterator[Poly]:
    """The q^n monic polynomials of degree n, lexicographic in (c_0, ..., c_{n-1})."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    for tail in itertools.product(range(F.q), repeat=n):
        yield Poly._make(F, tail + (1,))


def is_irreducible(f: Poly) -> bool:
    """Distinct-degree test: no factor of degree k <= deg/2 divides f."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no factorisation")
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    fm = f.monic()
    F = f.field
    theta = F.theta()
    h = theta
    for _ in range(n // 2):
        h = h.expand(F.q) % fm
        if (h - theta).gcd(fm).degree > 0:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _irreducibles_of_degree(F: FiniteField, k: int) -> tuple[Poly, ...]:
    if k == 1:
        return tuple(enumerate_monic(F, 1))
    reducible = np.zeros(F.q ** k, dtype=bool)
    for a in range(1, k // 2 + 1):
        H = monic_matrix(F, k - a)
        for g in _irreducibles_of_degree(F, a):
            prods = batch_mul(F, H, np.asarray(g.coeffs, dtype=np.int64))
            reducible[_lex_keys(F, prods, k)] = True
    keys = np.nonzero(~reducible)[0]
    rows = monic_matrix(F, k)[keys]
    return tuple(Poly._make(F, tuple(int(c) for c in row)) for row in rows)


def irreducibles_of_degree(F: FiniteField, k: int) -> list[Poly]:
    if k < 1:
        raise ValueError("degree must be >= 1")
    return list(_irreducibles_of_degree(F, k))


def monic_irreducibles(F: FiniteField, max_deg: int) -> list[Poly]:
    """All monic irreducibles of degree <= max_deg, sorted by (degree, coefficients)."""
    if max_deg < 1:
        raise ValueError("max_deg must be >= 1")
    out: list[Poly] = []
    for k in range(1, max_deg + 1):
        out.extend(_irreducibles_of_degree(F, k))
    return out


# ---------------------------------------------------------------------------
# primes and residue fields


class PrimeData:
    """A monic irreducible pi in A together with cached powers and residue field."""

    def __init__(self, pi: Poly):
        if not pi.is_monic():
            raise ConfigError("the prime must be a monic polynomial")
        if not is_irreducible(pi):
            raise ConfigError(f"{pi} is not irreducible")
        self.pi = pi
        self.field = pi.field
        self.d = pi.degree
        self._powers = {0: pi.field.one(), 1: pi}
        self._residue_field = None

    @classmethod
    def from_coeffs(cls, F: FiniteField, coeffs: Sequence[int]) -> "PrimeData":
        return cls(Poly(F, coeffs))

    def power(self, k: int) -> Poly:
        if k not in self._powers:
            self._powers[k] = self.pi ** k
        return self._powers[k]

    def reduce(self, a: Poly, k: int = 1) -> Poly:
        return a % self.power(k)

    @property
    def residue_field(self) -> "ResidueField":
        if self._residue_field is None:
            self._residue_field = ResidueField(self)
        return self._residue_field

    @property
    def unit_group_order(self) -> int:
        """q^d - 1, the order of the character group of Delta."""
        return self.field.q ** self.d - 1

    def __eq__(self, other):
        return isinstance(other, PrimeData) and self.pi == other.pi

    def __hash__(self):
        return hash((self.field, self.pi.coeffs))

    def __repr__(self):
        return f"PrimeData({self.pi})"


class ResidueField(TableField):
    """F_p = A/p with elements encoded as ``sum c_k q^k`` for residues of degree < d."""

    def __init__(self, prime: PrimeData):
        self.prime = prime
        self.base = prime.field
        self.d = prime.d
        self._init_tables(self.base.q ** self.d, self.base.p)

    def to_poly(self, x: int) -> Poly:
        q = self.base.q
        return Poly._make(self.base, _strip([(x // q ** k) % q for k in range(self.d)]))

    def from_poly(self, a: Poly) -> int:
        r = a % self.prime.pi
        q = self.base.q
        return sum(c * q ** k for k, c in enumerate(r.coeffs))

    def from_base(self, c: int) -> int:
        """Embed an element of F_q."""
        return c

    def _raw_mul(self, a: int, b: int) -> int:
        return self.from_poly(self.to_poly(a) * self.to_poly(b))

    def __repr__(self):
        return f"ResidueField({self.prime.pi})"


# ---------------------------------------------------------------------------
# Carlitz module


@dataclass(frozen=True)
class CarlitzPoly:
    """Additive polynomial sum_k tau_coeffs[k] * x^(q^k)."""

    tau_coeffs: tuple[Poly, ...]

    @property
    def field(self) -> FiniteField:
        return self.tau_coeffs[0].field

    def __add__(self, other: "CarlitzPoly") -> "CarlitzPoly":
        F = self.field
        n = max(len(self.tau_coeffs), len(other.tau_coeffs))
        zero = F.zero()
        a = self.tau_coeffs + (zero,) * (n - len(self.tau_coeffs))
        b = other.tau_coeffs + (zero,) * (n - len(other.tau_coeffs))
        out = [x + y for x, y in zip(a, b)]
        while len(out) > 1 and out[-1].is_zero():
            out.pop()
        return CarlitzPoly(tuple(out))

    def compose(self, other: "CarlitzPoly") -> "CarlitzPoly":
        """self o other, using tau f = f^q tau."""
        F = self.field
        out = [F.zero()] * (len(self.tau_coeffs) + len(other.tau_coeffs) - 1)
        for i, a in enumerate(self.tau_coeffs):
            if a.is_zero():
                continue
            qi = F.q ** i
            for j, b in enumerate(other.tau_coeffs):
                out[i + j] = out[i + j] + a * b.expand(qi)
        while len(out) > 1 and out[-1].is_zero():
            out.pop()
        return CarlitzPoly(tuple(out))

    def evaluate(self, x: Poly) -> Poly:
        F = self.field
        acc = F.zero()
        xk = x
        for c in self.tau_coeffs:
            acc = acc + c * xk
            xk = xk.expand(F.q) if len(xk.coeffs) > 1 else xk ** F.q
        return acc

    def reduce(self, m: Poly) -> "CarlitzPoly":
        return CarlitzPoly(tuple(c % m for c in self.tau_coeffs))

    def __str__(self):
        q = self.field.q
        parts = []
        for k, c in enumerate(self.tau_coeffs):
            if c.is_zero():
                continue
            x = "x" if k == 0 else f"x^{q ** k}"
            parts.append(x if c.coeffs == (1,) else f"({c}){x}")
        return " + ".join(parts) or "0"


def carlitz_action(a: Poly) -> CarlitzPoly:
    """Phi_a, built from Phi_theta = theta + tau by F_q-linearity."""
    F = a.field
    if a.is_zero():
        return CarlitzPoly((F.zero(),))
    theta = F.theta()
    phi_theta = CarlitzPoly((theta, F.one()))
    power = CarlitzPoly((F.one(),))
    acc = CarlitzPoly((F.zero(),))
    for c in a.coeffs:
        if c:
            acc = acc + CarlitzPoly(tuple(t.scale(c) for t in power.tau_coeffs))
        power = phi_theta.compose(power)
    return acc
