"""Command-line front end.

Every subcommand builds one JSON-ready result plus a list of table rows, so
the three output formats (table, json, csv) always carry the same data.
Exit codes: 0 success, 1 a verification or cross-check found a mismatch,
2 invalid input or precision, 3 a guard assertion fired, 4 unresolved.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

from .algebra import Poly, PrimeData
from .config import FORMATS, RunConfig
from .errors import (
    ConfigError,
    DivergenceError,
    DivisionRemainderError,
    FieldMismatchError,
    GuardError,
    NonUnitError,
    PrecisionError,
    UnresolvedError,
)
from .goss import (
    bernoulli_table,
    crt_exponent,
    infinity_interpolation_check,
    is_even_index,
    lfunction_direct,
    lfunction_exact,
    simon_degree,
    tail_start,
    zeta_infty,
    zeta_neg,
)
from .invariants import DEFAULT_M_CAP, inequality_report, poly_valuation, reverify_certificate
from .local import LaurentElem, PadicElem, ZpApprox, digits_needed
from .serialize import (
    field_to_json,
    group_ring_to_json,
    laurent_to_json,
    padic_to_json,
    poly_to_json,
    valuation_to_json,
)
from .sinnott import kernel_witness, sinnott_map
from .stickelberger import GroupRingElem, default_cutoff, sharp_value, theta_series
from .verify import SUITES, Context, run

DEFAULT_M = 4
DEFAULT_D = 6
DEFAULT_TARGET = 12


class Output:
    """A result object together with its tabular view."""

    def __init__(self, result: dict, columns: Sequence[str], rows: list[Sequence[Any]], status: int = 0):
        self.result = result
        self.columns = list(columns)
        self.rows = rows
        self.status = status

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.result, indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.columns)
            writer.writerows(self.rows)
            return buf.getvalue()
        cells = [self.columns] + [[str(c) for c in row] for row in self.rows]
        widths = [max(len(r[k]) for r in cells) for k in range(len(self.columns))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# formatting helpers


def _padic_str(x: PadicElem) -> str:
    return str(x.rep)


def _val(x: PadicElem | Poly, pi: Poly | None = None) -> Any:
    if isinstance(x, PadicElem):
        return valuation_to_json(x.valuation())
    return poly_valuation(x, pi)


def _val_str(v: Any) -> str:
    if isinstance(v, dict):
        return f">={v['at_least']}"
    return "-" if v is None else str(v)


def _group_str(g: GroupRingElem) -> str:
    if g.level == 0:
        return str(g.scalar())
    return " + ".join(f"{c}*[{rep}]" for rep, c in g.terms()) or "0"


def _laurent_str(x: LaurentElem) -> str:
    terms = []
    for k, c in enumerate(x.coeffs):
        if c:
            e = x.val + k
            terms.append(str(c) if e == 0 else f"{c}*t^{e}")
    body = " + ".join(terms) or "0"
    return body if x.absprec is None else f"{body} + O(t^{x.absprec})"


def _header(cfg: RunConfig, prime: PrimeData | None = None) -> dict:
    out = {"field": field_to_json(cfg.field())}
    if prime is not None:
        out["prime"] = poly_to_json(prime.pi)
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_bernoulli(cfg: RunConfig, args: argparse.Namespace) -> Output:
    if args.jmax < 0:
        raise ConfigError("--jmax must be >= 0")
    F = cfg.field()
    prime = cfg.prime_data() if cfg.prime is not None else None
    betas = bernoulli_table(F, args.jmax)
    rows, items = [], []
    for j, b in enumerate(betas):
        item = {"j": j, "beta": poly_to_json(b), "degree": b.degree}
        row = [j, str(b), b.degree]
        if prime is not None:
            v = poly_valuation(b, prime.pi)
            item["valuation"] = v
            row.append(_val_str(v))
        items.append(item)
        rows.append(row)
    columns = ["j", "beta", "deg"] + (["v"] if prime is not None else [])
    return Output({**_header(cfg, prime), "rows": items}, columns, rows)


def cmd_lfunction(cfg: RunConfig, args: argparse.Namespace) -> Output:
    prime = cfg.prime_data()
    F = prime.field
    M = cfg.prec or DEFAULT_M
    m = cfg.ydigits if cfg.ydigits is not None else digits_needed(F.p, M)
    y = ZpApprox.from_int(args.y, F.p, m)
    Q = prime.unit_group_order
    i = args.i % Q
    j = crt_exponent(F.q, prime.d, i, y)
    D = cfg.xdeg
    if D is None:
        D = simon_degree(F.q, j) + prime.d if args.at_one else DEFAULT_D
    result = {**_header(cfg, prime), "i": i, "y": y.value, "m": m, "M": M, "D": D, "j": j, "method": args.method}
    series = {}
    if args.method in ("exact", "both"):
        series["exact"] = lfunction_exact(prime, i, y, M)
    if args.method in ("direct", "both"):
        series["direct"] = lfunction_direct(prime, i, y, M, D)
    status = 0
    if args.method == "both":
        diff = [
            k for k in range(D + 1)
            if series["exact"].coeff(k) != series["direct"].coeff(k)
        ]
        result["diff"] = diff
        status = 1 if diff else 0
    if args.at_one:
        columns = ["method", "L(1)", "v(L(1))", "L'(1)", "v(L'(1))"]
        rows = []
        result["even"] = is_even_index(i, F.q)
        result["at_one"] = {}
        for name, L in series.items():
            a, b = L.at_one(), L.derivative_at_one()
            result["at_one"][name] = {
                "value": padic_to_json(a), "valuation": _val(a),
                "derivative": padic_to_json(b), "derivative_valuation": _val(b),
            }
            rows.append([name, _padic_str(a), _val_str(_val(a)), _padic_str(b), _val_str(_val(b))])
        return Output(result, columns, rows, status)
    top = max(len(L) for L in series.values()) if args.method == "exact" else D + 1
    names = list(series)
    result["coefficients"] = {
        name: [padic_to_json(series[name].coeff(k)) for k in range(top)] for name in names
    }
    columns = ["k"] + [f"{name}" for name in names] + [f"v_{name}" for name in names]
    rows = []
    for k in range(top):
        cs = [series[name].coeff(k) for name in names]
        rows.append([k] + [_padic_str(c) for c in cs] + [_val_str(_val(c)) for c in cs])
    return Output(result, columns, rows, status)


def cmd_stickelberger(cfg: RunConfig, args: argparse.Namespace) -> Output:
    prime = cfg.prime_data()
    n = cfg.level
    i = args.i % prime.unit_group_order
    D = cfg.xdeg or default_cutoff(prime, n)
    series = theta_series(prime, n, i, D)
    result = {**_header(cfg, prime), "level": n, "i": i, "D": D, "even": series.is_even,
              "sharp": args.sharp, "at_one": args.at_one}
    if args.sharp and i == 0:
        raise ConfigError("the modified series is defined for i != 0")
    if args.sharp and D < series.window_start:
        raise ConfigError(f"cutoff D = {D} is below the window start d(n+1) = {series.window_start}")
    if args.sharp and args.at_one:
        value = sharp_value(series)
        result["value"] = group_ring_to_json(value)
        return Output(result, ["value"], [[_group_str(value)]])
    if args.sharp:
        series.window_check()
        if series.is_even:
            coeffs, remainder = series.divide_one_minus_x()
            if not remainder.is_zero():
                raise DivisionRemainderError(f"(1 - X) does not divide Theta (level {n}, i = {i})")
        else:
            coeffs = list(series.coeffs)
    else:
        coeffs = list(series.coeffs)
    if args.at_one:
        total = GroupRingElem.zero(series.group)
        for c in coeffs:
            total = total + c
        result["value"] = group_ring_to_json(total)
        return Output(result, ["value"], [[_group_str(total)]])
    result["coefficients"] = [group_ring_to_json(c) for c in coeffs]
    return Output(result, ["k", "coefficient"], [[k, _group_str(c)] for k, c in enumerate(coeffs)])


def _index_range(text: str | None, Q: int) -> list[int]:
    """Parse "3", "1-7" or "1,3,5" (default: every i in [1, Q-1])."""
    if text is None:
        return list(range(1, Q))
    out: set[int] = set()
    for part in text.split(","):
        lo, sep, hi = part.strip().partition("-")
        try:
            out.update(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError as exc:
            raise ConfigError(f"cannot parse index range {text!r}") from exc
    return sorted(out)


def cmd_invariants(cfg: RunConfig, args: argparse.Namespace) -> Output:
    prime = cfg.prime_data()
    Q = prime.unit_group_order
    indices = _index_range(args.i, Q)
    for i in indices:
        if not 1 <= i <= Q - 1:
            raise ConfigError(f"i = {i} is outside [1, {Q - 1}]")
    M_cap = cfg.prec or DEFAULT_M_CAP
    items, rows = [], []
    for i in indices:
        rep = inequality_report(prime, i, n_max=args.n_max, M_cap=M_cap)
        r = rep.m_result
        item = {
            "i": i, "N": rep.n_value, "minus_i": r.i, "m": rep.m_value, "M": r.M,
            "witness_y": r.witness_y, "witness_j": r.witness_j, "holds": rep.holds,
        }
        row = [i, rep.n_value, r.i, rep.m_value, r.M, r.witness_j, "OK" if rep.holds else "FAIL"]
        if args.certify:
            ok = reverify_certificate(prime, r)
            item["certificate"] = ok
            row.append("OK" if ok else "FAIL")
        items.append(item)
        rows.append(row)
    columns = ["i", "N", "-i", "m", "M", "witness_j", "inequality"] + (["certificate"] if args.certify else [])
    bad = any(not it["holds"] or it.get("certificate") is False for it in items)
    return Output({**_header(cfg, prime), "rows": items}, columns, rows, 1 if bad else 0)


def cmd_sinnott(cfg: RunConfig, args: argparse.Namespace) -> Output:
    prime = cfg.prime_data()
    n = cfg.level
    w = kernel_witness(prime, n)
    image = sinnott_map(w)
    zero = image.is_zero()
    result = {
        **_header(cfg, prime), "level": n, "witness": group_ring_to_json(w),
        "image": [padic_to_json(v) for v in image.table], "zero_function": zero,
    }
    rows = [["witness", _group_str(w)], ["zero function", "true" if zero else "false"]]
    return Output(result, ["item", "value"], rows, 0 if zero else 1)


def cmd_zeta(cfg: RunConfig, args: argparse.Namespace) -> Output:
    F = cfg.field()
    p = F.p
    target = cfg.prec or DEFAULT_TARGET
    if args.j is not None:
        if args.j < 0:
            raise ConfigError("--j must be >= 0")
        x_exp, y_int = -args.j, -args.j
    else:
        if args.x_exp is None or args.y is None:
            raise ConfigError("give --j, or both --x-exp and --y")
        x_exp, y_int = args.x_exp, args.y
    x = LaurentElem.theta_pow(F, x_exp)
    if args.euler is not None:
        prime = cfg.prime_data()
        m = cfg.ydigits if cfg.ydigits is not None else digits_needed(p, target)
        y = ZpApprox.from_int(y_int, p, m)
        rep = infinity_interpolation_check(prime, x, y, args.euler, target)
        result = {
            **_header(cfg, prime), "x_theta_exp": x_exp, "y": y.value, "m": m, "D": args.euler,
            "target": target, "precision": rep.precision, "agree": rep.agree, "passed": rep.passed,
            "euler_side": laurent_to_json(rep.euler_side), "zeta_side": laurent_to_json(rep.zeta_side),
        }
        rows = [
            ["euler side", _laurent_str(rep.euler_side)],
            ["zeta side", _laurent_str(rep.zeta_side)],
            ["certified precision", rep.precision],
            ["agree", "true" if rep.agree else "false"],
        ]
        return Output(result, ["item", "value"], rows, 0 if rep.passed else 1)
    n_star = tail_start(p, x.val, target)
    m = cfg.ydigits if cfg.ydigits is not None else digits_needed(p, target + n_star * max(x.val, 0))
    y = ZpApprox.from_int(y_int, p, m)
    z = zeta_infty(x, y, target)
    result = {**_header(cfg), "x_theta_exp": x_exp, "y": y.value, "m": m, "target": target,
              "value": laurent_to_json(z)}
    rows = [["zeta", _laurent_str(z)]]
    status = 0
    if args.j is not None:
        exact = zeta_neg(F, args.j)
        agree = z.agrees_with(LaurentElem.from_poly(exact))
        result["exact"] = poly_to_json(exact)
        result["agree"] = agree
        rows += [["Z(1, j)", str(exact)], ["agree", "true" if agree else "false"]]
        status = 0 if agree else 1
    return Output(result, ["item", "value"], rows, status)


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> Output:
    ctx = Context.single(cfg.prime_data()) if cfg.explicit_field else Context.defaults()
    report, guard = run(args.suite, ctx, cfg.threads)
    status = 3 if guard else (1 if report["failures"] else 0)
    if "suites" in report:
        rows = [[s["suite"], s["cases"], s["failures"]] for s in report["suites"]]
    else:
        rows = [[report["suite"], report["cases"], len(report["failures"])]]
    return Output(report, ["suite", "cases", "failures"], rows, status)


COMMANDS = {
    "bernoulli": cmd_bernoulli,
    "lfunction": cmd_lfunction,
    "stickelberger": cmd_stickelberger,
    "invariants": cmd_invariants,
    "sinnott": cmd_sinnott,
    "zeta": cmd_zeta,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--p", type=int, help="characteristic (default 3)")
    g.add_argument("--e", type=int, help="q = p^e (default 1)")
    g.add_argument("--modulus", help="defining polynomial of F_q over F_p, little-endian, e.g. 1,0,1")
    g.add_argument("--prime", help="coefficients of pi, little-endian, e.g. 0,1 for theta")
    g.add_argument("--level", type=int, help="tower level n")
    g.add_argument("--prec", type=int, help="precision M")
    g.add_argument("--xdeg", type=int, help="X-degree cutoff D")
    g.add_argument("--ydigits", type=int, help="p-adic digits m of the exponent y")
    g.add_argument("--format", choices=FORMATS, help="output format (default table)")
    g.add_argument("--json", action="store_true", help="shorthand for --format json")
    g.add_argument("--threads", type=int, help="worker threads for verify")
    g.add_argument("--config", help="JSON file with the same keys as these flags")

    parser = argparse.ArgumentParser(
        prog="goss-iwasawa",
        description="Exact computations with Goss zeta values, p-adic L-functions and Stickelberger series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bernoulli", parents=[common], help="table of Bernoulli-Goss numbers")
    sp.add_argument("--jmax", type=int, required=True)

    sp = sub.add_parser("lfunction", parents=[common], help="coefficients of L_p(X, y, omega^i)")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--y", type=int, required=True)
    sp.add_argument("--method", choices=("exact", "direct", "both"), default="exact")
    sp.add_argument("--at-one", action="store_true", help="value and X-derivative at X = 1")

    sp = sub.add_parser("stickelberger", parents=[common], help="Theta_n(X, omega~^i) modulo p")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--sharp", action="store_true", help="divide by (1 - X) for even i")
    sp.add_argument("--at-one", action="store_true", help="evaluate at X = 1")

    sp = sub.add_parser("invariants", parents=[common], help="N(i), m(-i) and the inequality")
    sp.add_argument("--i", help="indices, e.g. 1 or 1-7 or 1,3,5 (default all)")
    sp.add_argument("--n-max", type=int, default=3)
    sp.add_argument("--certify", action="store_true", help="re-verify m through the direct character sum")

    sub.add_parser("sinnott", parents=[common], help="a kernel witness of s_n at --level")

    sp = sub.add_parser("zeta", parents=[common], help="zeta at infinity")
    sp.add_argument("--j", type=int, help="evaluate at s = -j and compare with Z(1, j)")
    sp.add_argument("--x-exp", type=int, help="x = theta^k")
    sp.add_argument("--y", type=int)
    sp.add_argument("--euler", type=int, metavar="D", help="compare with the Euler product over degree <= D")

    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    return parser


CONFIG_KEYS = ("p", "e", "modulus", "prime", "level", "prec", "xdeg", "ydigits", "format", "threads")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = {k: getattr(args, k) for k in CONFIG_KEYS}
    if args.json:
        flags["format"] = "json"
    try:
        cfg = RunConfig.from_sources(flags, args.config)
        out = COMMANDS[args.command](cfg, args)
    except GuardError as exc:
        print(f"guard failure: {exc}", file=sys.stderr)
        return 3
    except UnresolvedError as exc:
        print(f"unresolved: {exc}", file=sys.stderr)
        return 4
    except (ConfigError, PrecisionError, DivergenceError, FieldMismatchError, NonUnitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out.render(cfg.format))
    return out.status


if __name__ == "__main__":
    sys.exit(main())
