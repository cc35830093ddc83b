"""The invariants m_p(i) and N_p(i), with certificates.

m_p(i) is an infimum over y in Z_p of pi-adic valuations of L_p(1, y, omega^i)
(or of its X-derivative when (q-1) | i).  Modulo pi^M the L-function depends
only on y mod p^m with p^m >= M, so at a fixed M the infimum becomes a finite
minimum over p^m classes.  If that minimum is below M it is exact; otherwise
M is doubled, up to a cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra import Poly, PrimeData, int_log_floor
from .errors import ConfigError, UnresolvedError
from .goss import (
    bernoulli_table,
    crt_exponent,
    is_even_index,
    lfunction_direct,
    lfunction_exact,
    simon_degree,
)
from .local import AtLeast, ZpApprox, digits_needed
from .stickelberger import NotFound, n_invariant

DEFAULT_M_CAP = 64
EVEN_SEED = 8


def estmi_seed(q: int, d: int, i: int) -> int:
    """floor((i/d) log_q(i+1)) + 2, computed exactly as (largest k with q^(kd) <= (i+1)^i) + 2."""
    return int_log_floor(q ** d, (i + 1) ** i) + 2


def estmi_holds(q: int, d: int, i: int, value: int) -> bool:
    """value <= (i/d) log_q(i+1), i.e. q^(d*value) <= (i+1)^i."""
    return q ** (d * value) <= (i + 1) ** i


@dataclass
class MInvariantResult:
    i: int
    even: bool
    value: int | None
    M: int
    m: int
    valuations: list[tuple[int, int | AtLeast]]
    witness_y: int | None = None
    witness_j: int | None = None
    value_at_one_vanishes: bool | None = None
    history: list[int] = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        return self.value is not None


def _special(prime: PrimeData, i: int, y: ZpApprox, M: int):
    L = lfunction_exact(prime, i, y, M)
    return L.at_one(), L.derivative_at_one()


def m_invariant(prime: PrimeData, i: int, M_init: int | None = None, M_cap: int = DEFAULT_M_CAP) -> MInvariantResult:
    """m_p(i) by iterative deepening; ``value`` is None when M_cap is reached."""
    F = prime.field
    q, d, p = F.q, prime.d, F.p
    Q = prime.unit_group_order
    i %= Q
    even = is_even_index(i, q)
    if M_init is None:
        M_init = min(EVEN_SEED if even else estmi_seed(q, d, i), M_cap)
    if M_init < 1 or M_cap < M_init:
        raise ConfigError(f"need 1 <= M_init <= M_cap, got {M_init}, {M_cap}")
    M = M_init
    history = []
    while True:
        history.append(M)
        m = digits_needed(p, M)
        vals: list[tuple[int, int | AtLeast]] = []
        vanishes = True
        for yv in range(p ** m):
            y = ZpApprox(yv, m, p)
            value, deriv = _special(prime, i, y, M)
            target = deriv if even else value
            if even and not value.is_zero():
                vanishes = False
            vals.append((yv, target.valuation()))
        # witness: the class with the least valuation, ties broken by the least CRT exponent
        finite = [
            (v, crt_exponent(q, d, i, ZpApprox(yv, m, p)), yv)
            for yv, v in vals
            if not isinstance(v, AtLeast)
        ]
        if finite:
            best, wj, wy = min(finite)
            return MInvariantResult(i, even, best, M, m, vals, wy, wj, vanishes if even else None, history)
        if M >= M_cap:
            return MInvariantResult(i, even, None, M, m, vals, None, None, vanishes if even else None, history)
        M = min(2 * M, M_cap)


def reverify_certificate(prime: PrimeData, result: MInvariantResult) -> bool:
    """Recompute every per-class valuation through the direct character sum."""
    F = prime.field
    p, q, d = F.p, F.q, prime.d
    for yv, v in result.valuations:
        y = ZpApprox(yv, result.m, p)
        j = crt_exponent(q, d, result.i, y)
        D = simon_degree(q, j) + d
        L = lfunction_direct(prime, result.i, y, result.M, D)
        target = L.derivative_at_one() if result.even else L.at_one()
        if target.valuation() != v:
            return False
    return True


def poly_valuation(a: Poly, pi: Poly) -> int | None:
    """pi-adic valuation of a nonzero polynomial (None for zero)."""
    if a.is_zero():
        return None
    v = 0
    while True:
        quo, rem = divmod(a, pi)
        if not rem.is_zero():
            return v
        a, v = quo, v + 1


def beta_scan(prime: PrimeData, i: int, J: int) -> tuple[int | None, int | None]:
    """(min v_p(beta(j)), first j attaining it) over 1 <= j <= J, j = i mod q^d - 1."""
    Q = prime.unit_group_order
    betas = bernoulli_table(prime.field, J)
    best, arg = None, None
    for j in range(1, J + 1):
        if (j - i) % Q:
            continue
        v = poly_valuation(betas[j], prime.pi)
        if v is not None and (best is None or v < best):
            best, arg = v, j
    return best, arg


@dataclass
class EstmiReport:
    i: int
    value: int
    bound: float
    holds: bool


def estmi_check(prime: PrimeData, i: int, M_cap: int = DEFAULT_M_CAP) -> EstmiReport:
    F = prime.field
    Q = prime.unit_group_order
    if not 1 <= i <= Q - 1 or is_even_index(i, F.q):
        raise ConfigError(f"the bound applies to 1 <= i <= {Q - 1} with (q-1) not dividing i")
    res = m_invariant(prime, i, M_cap=M_cap)
    if not res.resolved:
        raise UnresolvedError(f"m({i}) unresolved at M = {res.M}")
    bound = (i / prime.d) * math.log(i + 1, F.q)
    return EstmiReport(i, res.value, bound, estmi_holds(F.q, prime.d, i, res.value))


@dataclass
class InequalityReport:
    i: int
    n_value: int
    m_value: int
    m_result: MInvariantResult

    @property
    def holds(self) -> bool:
        return self.n_value <= self.m_value


def inequality_report(prime: PrimeData, i: int, n_max: int = 3, M_cap: int = DEFAULT_M_CAP) -> InequalityReport:
    """N_p(i) <= m_p(-i) for 1 <= i <= q^d - 2."""
    Q = prime.unit_group_order
    if not 1 <= i <= Q - 1:
        raise ConfigError(f"i must lie in [1, {Q - 1}]")
    N = n_invariant(prime, i, n_max)
    if isinstance(N, NotFound):
        raise UnresolvedError(f"N({i}) not found up to level {N.n_max}")
    res = m_invariant(prime, (-i) % Q, M_cap=M_cap)
    if not res.resolved:
        raise UnresolvedError(f"m({(-i) % Q}) unresolved at M = {res.M}")
    return InequalityReport(i, N, res.value, res)
