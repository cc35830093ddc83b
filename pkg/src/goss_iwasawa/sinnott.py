"""The finite-level Sinnott map s_n : F_p[Gamma_n] -> C(Z_p, A/pi^(n+1)).

A group element gamma goes to the function y -> kappa(gamma)^y, where kappa(gamma)
is its one-unit representative.  Because u^(p^m) = 1 mod pi^(n+1) once
p^m >= n + 1, every image factors through Z/p^(m_n), so a function is
stored as its full value table.  Residue-field coefficients are embedded in
A_p through the Teichmuller lift, which is additive in characteristic p.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .algebra import PrimeData, int_log_ceil
from .errors import ConfigError, PrecisionError
from .goss import lfunction_exact
from .local import PadicElem, ZpApprox, padic_pow_zp, teichmuller_residue
from .stickelberger import GroupRingElem, gamma_group, theta_series


def table_digits(p: int, n: int) -> int:
    """m_n: the least m with p^m >= n + 1."""
    return int_log_ceil(p, n + 1)


@dataclass(frozen=True)
class DirFunction:
    """A function Z_p -> A/pi^(n+1) that factors through Z/p^(m_n), as a value table."""

    prime: PrimeData
    level: int
    table: tuple[PadicElem, ...]

    @property
    def digits(self) -> int:
        return table_digits(self.prime.field.p, self.level)

    def __call__(self, y: ZpApprox | int) -> PadicElem:
        value = y.value if isinstance(y, ZpApprox) else y
        if isinstance(y, ZpApprox) and y.m < self.digits:
            raise PrecisionError(f"need {self.digits} digits of y, got {y.m}")
        return self.table[value % len(self.table)]

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.table)

    def __add__(self, other: "DirFunction") -> "DirFunction":
        return DirFunction(self.prime, self.level, tuple(a + b for a, b in zip(self.table, other.table)))

    def __mul__(self, other: "DirFunction") -> "DirFunction":
        return DirFunction(self.prime, self.level, tuple(a * b for a, b in zip(self.table, other.table)))

    def reduce(self, level: int) -> "DirFunction":
        """Values reduced modulo pi^(level+1), tabulated on the smaller period."""
        size = self.prime.field.p ** table_digits(self.prime.field.p, level)
        return DirFunction(self.prime, level, tuple(v.with_prec(level + 1) for v in self.table[:size]))


@functools.lru_cache(maxsize=32)
def _kappa_powers(prime: PrimeData, n: int) -> tuple[tuple[PadicElem, ...], ...]:
    """kappa(gamma)^y for every gamma in Gamma_n and y in Z/p^(m_n)."""
    group = gamma_group(prime, n)
    p = prime.field.p
    m = table_digits(p, n)
    out = []
    for rep in group.reps:
        u = PadicElem(rep, n + 1, prime)
        out.append(tuple(padic_pow_zp(u, ZpApprox(y, m, p), n + 1) for y in range(p ** m)))
    return tuple(out)


@functools.lru_cache(maxsize=32)
def _lifts(prime: PrimeData, n: int) -> tuple[PadicElem, ...]:
    R = prime.residue_field
    return tuple(teichmuller_residue(prime, r, n + 1) for r in range(R.order))


def sinnott_map(element: GroupRingElem) -> DirFunction:
    """y -> sum_gamma omega(c_gamma) kappa(gamma)^y modulo pi^(n+1)."""
    group = element.group
    prime, n = group.prime, group.n
    p = prime.field.p
    size = p ** table_digits(p, n)
    powers = _kappa_powers(prime, n)
    lifts = _lifts(prime, n)
    table = []
    for y in range(size):
        acc = PadicElem.zero(prime, n + 1)
        for g, c in enumerate(element.vec.tolist()):
            if c:
                acc = acc + lifts[c] * powers[g][y]
        table.append(acc)
    return DirFunction(prime, n, tuple(table))


def _nullspace_vector(R, rows: list[list[int]], ncols: int) -> list[int]:
    """A nonzero solution of rows * x = 0 over R: the last free variable set to 1."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(mat)) if mat[k][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = R.inv(mat[r][col])
        mat[r] = [R.mul(inv, v) for v in mat[r]]
        for k in range(len(mat)):
            if k != r and mat[k][col]:
                f = mat[k][col]
                mat[k] = [R.sub(a, R.mul(f, b)) for a, b in zip(mat[k], mat[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        raise ConfigError("the system has only the trivial solution")
    x = [0] * ncols
    x[free[-1]] = 1
    for row, col in zip(mat, pivots):
        x[col] = R.neg(row[free[-1]])
    return x


def kernel_witness(prime: PrimeData, n: int) -> GroupRingElem:
    """Nonzero x1 g1 + x2 g2 + x3 g3 in the kernel of s_n, with kappa(g_i) = 1 + a_i pi^n."""
    if n < 1:
        raise ConfigError("s_0 is injective on scalars; a witness needs n >= 1")
    R = prime.residue_field
    group = gamma_group(prime, n)
    residues = [0, 1, 2]
    x = _nullspace_vector(R, [[1, 1, 1], residues], 3)
    F = prime.field
    terms = []
    for a, c in zip(residues, x):
        kappa = F.one() + R.to_poly(a) * prime.power(n)
        terms.append((kappa, c))
    return GroupRingElem.from_terms(group, terms)


@dataclass
class StickLfunReport:
    level: int
    char_index: int
    y: int
    cutoff: int
    mismatches: list[int]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def stick_lfun_check(prime: PrimeData, i: int, n: int, D: int, y: ZpApprox) -> StickLfunReport:
    """Compare s_n of each X^k coefficient of Theta_n(X, omega~^(-i)) at y with L_p(X, -y, omega^i)."""
    m = table_digits(prime.field.p, n)
    if y.m < m:
        raise PrecisionError(f"level {n} needs {m} digits of y, got {y.m}")
    Q = prime.unit_group_order
    series = theta_series(prime, n, (-i) % Q, D)
    L = lfunction_exact(prime, i, (-y).reduce(m), n + 1)
    mismatches = []
    for k in range(D + 1):
        lhs = sinnott_map(series.coeff(k))(y)
        if lhs != L.coeff(k):
            mismatches.append(k)
    return StickLfunReport(n, i % Q, y.value, D, mismatches)

