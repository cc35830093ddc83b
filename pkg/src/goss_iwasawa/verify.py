"""Verification suites: each checks one family of identities exhaustively or on seeded samples.

A suite returns ``{"suite", "cases", "failures"}``; every failure records
the full inputs needed to replay it.  Output contains no timings and is
assembled in a fixed order, so it is byte-identical across runs and
thread counts.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .algebra import GF, FiniteField, PrimeData
from .errors import GuardError
from .goss import (
    bernoulli_table,
    infinity_interpolation_check,
    infty_block_sum,
    is_even_index,
    lfunction_direct,
    lfunction_exact,
    power_sum_table,
    simon_degree,
    tail_start,
    zeta_infty,
    zeta_neg,
    zeta_poly,
)
from .invariants import (
    estmi_holds,
    inequality_report,
    m_invariant,
    reverify_certificate,
)
from .local import LaurentElem, PadicElem, ZpApprox, digits_needed
from .sinnott import kernel_witness, sinnott_map, stick_lfun_check, table_digits
from .stickelberger import (
    GroupRingElem,
    NotFound,
    default_cutoff,
    gamma_group,
    n_invariant,
    theta_series,
)

SEED = 20240611
JMAX = 300
RANDOM_Y = 20


@dataclass
class Context:
    """Which configurations a suite runs on."""

    primes: list[PrimeData]
    fields: list[FiniteField]
    default: bool

    @classmethod
    def defaults(cls) -> "Context":
        F3 = GF(3)
        return cls(
            primes=[PrimeData(F3.theta()), PrimeData(F3.poly([1, 0, 1]))],
            fields=[GF(3), GF(5)],
            default=True,
        )

    @classmethod
    def single(cls, prime: PrimeData) -> "Context":
        return cls(primes=[prime], fields=[prime.field], default=False)


@dataclass
class Tally:
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    guard: bool = False

    def check(self, ok: bool, case: dict, detail: str = "") -> None:
        self.cases += 1
        if not ok:
            self.failures.append({"case": case, "detail": detail})

    def guard_failure(self, case: dict, exc: GuardError) -> None:
        self.cases += 1
        self.guard = True
        self.failures.append({"case": case, "detail": f"guard: {exc}"})


def _cfg(prime: PrimeData) -> dict:
    return {"q": prime.field.q, "prime": list(prime.pi.coeffs)}


def _fcfg(F: FiniteField) -> dict:
    return {"q": F.q}


# ---------------------------------------------------------------------------


def suite_simon(ctx: Context, tally: Tally) -> None:
    """S_n(j) = 0 for 1 <= j < q^n - 1, n <= 3."""
    for F in ctx.fields:
        for n in range(1, 4):
            top = F.q ** n - 2
            if top < 1:
                continue
            table = power_sum_table(F, n, top)
            for j in range(1, top + 1):
                tally.check(table[j].is_zero(), {**_fcfg(F), "n": n, "j": j}, f"S_n(j) = {table[j]}")


def suite_beta(ctx: Context, tally: Tally) -> None:
    """beta(j) = 1 mod theta^q - theta, beta(j) != 0, deg beta(j) <= floor(log_q(j+1)) j."""
    for F in ctx.fields:
        theta = F.theta()
        modulus = theta.expand(F.q) - theta
        for j, b in enumerate(bernoulli_table(F, JMAX)):
            case = {**_fcfg(F), "j": j}
            tally.check(b % modulus == F.one(), case, f"beta mod (theta^q - theta) = {b % modulus}")
            tally.check(not b.is_zero(), case, "beta(j) = 0")
            tally.check(b.degree <= simon_degree(F.q, j) * j, case, f"deg beta = {b.degree}")


def suite_trivial(ctx: Context, tally: Tally) -> None:
    """Z(1, j) = 0 for 1 <= j <= 300 with (q-1) | j."""
    for F in ctx.fields:
        N = simon_degree(F.q, JMAX)
        tables = [power_sum_table(F, n, JMAX) for n in range(N + 1)]
        for j in range(F.q - 1, JMAX + 1, F.q - 1):
            total = F.zero()
            for n in range(simon_degree(F.q, j) + 1):
                total = total + tables[n][j]
            tally.check(total.is_zero(), {**_fcfg(F), "j": j}, f"Z(1, j) = {total}")


def _reduce_exact(prime: PrimeData, j: int, M: int) -> list[PadicElem]:
    """(1 - pi^j X^d) Z(X, j) from the exact power sums, reduced modulo pi^M."""
    Z = zeta_poly(prime.field, j)
    pij = prime.pi ** j
    d = prime.d
    out = []
    for n in range(len(Z) + d):
        c = Z.coeff(n)
        if n >= d:
            c = c - pij * Z.coeff(n - d)
        out.append(PadicElem(c, M, prime))
    return out


def suite_interp(ctx: Context, tally: Tally) -> None:
    """Direct L-coefficients at integer j = i match (1 - pi^j X^d) Z(X, j); mod p they match Z(X, i)."""
    M, D = 4, 6
    rng = random.Random(SEED)
    for prime in ctx.primes:
        F = prime.field
        Q = prime.unit_group_order
        m = digits_needed(F.p, M)
        for i in range(Q):
            for j in range(i, 51, Q):
                L = lfunction_direct(prime, i, ZpApprox.from_int(j, F.p, m), M, D)
                expected = _reduce_exact(prime, j, M)
                bad = [
                    k for k in range(D + 1)
                    if L.coeff(k) != (expected[k] if k < len(expected) else PadicElem.zero(prime, M))
                ]
                tally.check(not bad, {**_cfg(prime), "i": i, "j": j, "M": M, "D": D}, f"coefficients differ at {bad}")
        ys = [rng.randrange(F.p ** 4) for _ in range(RANDOM_Y)]
        # the congruence is proved through pi^i = 0 mod p, so for i = 0 the
        # representative exponent is q^d - 1 rather than 0
        for i in range(Q):
            Zi = zeta_poly(F, i if i else Q)
            for y in ys:
                L = lfunction_exact(prime, i, ZpApprox(y, 4, F.p), 1)
                bad = [k for k in range(max(len(L), len(Zi))) if L.coeff(k) != PadicElem(Zi.coeff(k), 1, prime)]
                tally.check(not bad, {**_cfg(prime), "i": i, "y": y, "m": 4}, f"mod p mismatch at {bad}")


def suite_even(ctx: Context, tally: Tally) -> None:
    """L_p(1, y, omega^i) = 0 mod pi^4 for every even i and every y mod p^2."""
    M = 4
    for prime in ctx.primes:
        F = prime.field
        for i in range(prime.unit_group_order):
            if not is_even_index(i, F.q):
                continue
            for y in range(F.p ** 2):
                v = lfunction_exact(prime, i, ZpApprox(y, 2, F.p), M).at_one()
                tally.check(v.is_zero(), {**_cfg(prime), "i": i, "y": y, "M": M}, f"value {v}")


def suite_stick(ctx: Context, tally: Tally) -> None:
    """Structure of Theta_n(X, omega~^i) modulo p for n <= 2."""
    for prime in ctx.primes:
        for n in range(3):
            D = default_cutoff(prime, n)
            for i in range(prime.unit_group_order):
                case = {**_cfg(prime), "n": n, "i": i, "D": D}
                series = theta_series(prime, n, i, D)
                tally.check(series.coeff(0) == GroupRingElem.one(series.group), {**case, "check": "X^0"})
                back = series.times_euler_factors()
                ok = back[0] == GroupRingElem.one(series.group) and all(c.is_zero() for c in back[1:])
                tally.check(ok, {**case, "check": "euler-inverse"})
                if n <= 1:
                    upper = theta_series(prime, n + 1, i, default_cutoff(prime, n + 1))
                    lower = theta_series(prime, n, i, upper.cutoff)
                    pushed = upper.project()
                    ok = all(a == b for a, b in zip(pushed.coeffs, lower.coeffs))
                    tally.check(ok, {**case, "check": "tower"})
                if i == 0:
                    continue
                if series.is_even:
                    _, rem = series.divide_one_minus_x()
                    tally.check(rem.is_zero(), {**case, "check": "one-minus-x"}, "nonzero remainder")
                window = all(series.coeff(k).is_zero() for k in range(series.window_start, D + 1))
                tally.check(window, {**case, "check": "window"}, "nonzero coefficient in guard window")


def suite_sinnott(ctx: Context, tally: Tally) -> None:
    """s_n(Theta_n(X, omega~^(-i)))(y) = L_p(X, -y, omega^i) mod pi^(n+1)."""
    for prime in ctx.primes:
        n_top = 2 if prime.d == 1 else 1
        for n in range(n_top + 1):
            m = table_digits(prime.field.p, n)
            D = default_cutoff(prime, n)
            for i in range(1, prime.unit_group_order):
                for y in range(prime.field.p ** m):
                    r = stick_lfun_check(prime, i, n, D, ZpApprox(y, m, prime.field.p))
                    tally.check(
                        r.passed, {**_cfg(prime), "n": n, "i": i, "y": y, "D": D},
                        f"mismatched X-degrees {r.mismatches}",
                    )


def suite_kernel(ctx: Context, tally: Tally) -> None:
    """kernel_witness(n) is nonzero and killed by s_n for n = 1, 2, 3."""
    primes = [PrimeData(F.theta()) for F in ctx.fields] if ctx.default else ctx.primes
    for prime in primes:
        for n in (1, 2, 3):
            w = kernel_witness(prime, n)
            case = {**_cfg(prime), "n": n}
            tally.check(not w.is_zero(), case, "witness is zero")
            tally.check(sinnott_map(w).is_zero(), case, "image is not the zero function")
    if ctx.default:
        prime = PrimeData(GF(3).theta())
        w = kernel_witness(prime, 1)
        norm = GroupRingElem.norm_element(gamma_group(prime, 1))
        c = w.scalar()
        tally.check(c != 0 and w == norm.scale(c), {**_cfg(prime), "n": 1, "check": "norm-line"})


def suite_invariants(ctx: Context, tally: Tally) -> None:
    """N and m with certificates; N(i) <= m(-i); the log bound on m; direct re-verification."""
    for prime in ctx.primes:
        F = prime.field
        Q = prime.unit_group_order
        if ctx.default and prime.d == 1:
            r = m_invariant(prime, 1)
            N = n_invariant(prime, 1, 3)
            case = {**_cfg(prime), "i": 1}
            tally.check(r.value == 0 and r.witness_j == 1, {**case, "check": "m=0"}, f"m = {r.value}, j = {r.witness_j}")
            tally.check(N == 0, {**case, "check": "N=0"}, f"N = {N}")
            tally.check(reverify_certificate(prime, r), {**case, "check": "certificate"})
        for i in range(1, Q):
            case = {**_cfg(prime), "i": i}
            rep = inequality_report(prime, i)
            tally.check(rep.holds, {**case, "check": "N<=m"}, f"N = {rep.n_value}, m = {rep.m_value}")
            tally.check(
                reverify_certificate(prime, rep.m_result),
                {**case, "check": "certificate", "minus_i": rep.m_result.i},
            )
            if not is_even_index(i, F.q):
                r = m_invariant(prime, i)
                ok = r.resolved and estmi_holds(F.q, prime.d, i, r.value)
                tally.check(ok, {**case, "check": "estmi"}, f"m = {r.value}")


def suite_fw(ctx: Context, tally: Tally) -> None:
    """n_invariant(i, n_max=3) resolves for every i != 0."""
    for prime in ctx.primes:
        for i in range(1, prime.unit_group_order):
            N = n_invariant(prime, i, 3)
            tally.check(not isinstance(N, NotFound), {**_cfg(prime), "i": i}, "not found up to level 3")


def suite_infty(ctx: Context, tally: Tally) -> None:
    """zeta at infinity against Z(1, j); block valuations; the Euler-product interpolation."""
    target = 12
    for F in dict.fromkeys(prime.field for prime in ctx.primes):
        p = F.p
        for j in range(21):
            for sign in (-1, 1):
                x = LaurentElem.theta_pow(F, sign * j)
                n_star = tail_start(p, x.val, target)
                m = digits_needed(p, target + n_star * max(x.val, 0))
                z = zeta_infty(x, ZpApprox.from_int(-j, p, m), target)
                if sign < 0:
                    expected = LaurentElem.from_poly(zeta_neg(F, j))
                else:
                    expected = LaurentElem.zero(F)
                    for n, c in enumerate(zeta_poly(F, j)):
                        expected = expected + LaurentElem.from_poly(c) * LaurentElem.theta_pow(F, -2 * j * n)
                ok = z.absprec == target and z.agrees_with(expected)
                tally.check(ok, {"q": F.q, "x_theta_exp": sign * j, "y": -j, "target": target})
        for n in range(1, 5):
            prec = p ** (n - 1)
            for y in range(p ** (n - 1)):
                block = infty_block_sum(F, n, ZpApprox(y, n - 1, p), prec)
                # the block modulo t^(p^(n-1)) depends only on y mod p^(n-1): this is exhaustive
                tally.check(block.is_zero() and block.absprec == prec, {"q": F.q, "n": n, "y": y}, f"block {block}")
    rng = random.Random(SEED)
    for prime in ctx.primes:
        F = prime.field
        x = LaurentElem.theta_pow(F, 2)
        ys = [ZpApprox(0, 2, F.p)] + [ZpApprox(rng.randrange(F.p ** 2), 2, F.p) for _ in range(RANDOM_Y)]
        for y in ys:
            r = infinity_interpolation_check(prime, x, y, 6, 8)
            tally.check(r.passed, {**_cfg(prime), "x_theta_exp": 2, "y": y.value, "m": 2, "D": 6, "target": 8},
                        f"agree={r.agree} precision={r.precision}")
        for j in (1, 2, 3):
            xj = LaurentElem.theta_pow(F, j)
            y = ZpApprox.from_int(j, F.p, 3)
            r = infinity_interpolation_check(prime, xj, y, 6, 6)
            tally.check(r.passed, {**_cfg(prime), "x_theta_exp": j, "y": j, "m": 3, "D": 6, "target": 6},
                        f"agree={r.agree} precision={r.precision}")


SUITES: dict[str, Callable[[Context, Tally], None]] = {
    "simon": suite_simon,
    "beta": suite_beta,
    "trivial": suite_trivial,
    "interp": suite_interp,
    "even": suite_even,
    "stick": suite_stick,
    "sinnott": suite_sinnott,
    "kernel": suite_kernel,
    "invariants": suite_invariants,
    "fw": suite_fw,
    "infty": suite_infty,
}


def run_suite(name: str, ctx: Context) -> tuple[dict, bool]:
    tally = Tally()
    try:
        SUITES[name](ctx, tally)
    except GuardError as exc:
        tally.guard_failure({"suite": name}, exc)
    return {"suite": name, "cases": tally.cases, "failures": tally.failures}, tally.guard


def run(suite: str, ctx: Context | None = None, threads: int = 1) -> tuple[dict, bool]:
    """Run one suite or ``all``; returns (report, any guard fired)."""
    ctx = ctx or Context.defaults()
    names = list(SUITES) if suite == "all" else [suite]
    if threads > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: run_suite(s, ctx), names))
    else:
        results = [run_suite(s, ctx) for s in names]
    guard = any(g for _, g in results)
    if suite != "all":
        return results[0][0], guard
    failures = []
    for rep, _ in results:
        failures.extend({"suite": rep["suite"], **f} for f in rep["failures"])
    report = {
        "suite": "all",
        "cases": sum(rep["cases"] for rep, _ in results),
        "failures": failures,
        "suites": [{"suite": rep["suite"], "cases": rep["cases"], "failures": len(rep["failures"])} for rep, _ in results],
    }
    return report, guard
