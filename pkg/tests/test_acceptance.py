"""The twelve acceptance criteria, one test each, zero tolerance.

Every test prints a single PASS/FAIL line (shown even under output capture).
"""

import subprocess
import sys

import pytest

from goss_iwasawa.algebra import GF, PrimeData
from goss_iwasawa.invariants import inequality_report, m_invariant
from goss_iwasawa.sinnott import kernel_witness
from goss_iwasawa.stickelberger import GroupRingElem, NotFound, gamma_group, n_invariant
from goss_iwasawa.verify import run

CONFIGS = [(1, [0, 1]), (2, [1, 0, 1])]


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}"
            print("\n" + line + (f" ({detail})" if detail else ""), flush=True)
        return ok

    return emit


def suite_ok(name):
    rep, guard = run(name)
    return rep, (not guard and rep["cases"] > 0 and rep["failures"] == [])


def test_01_simon(report):
    rep, ok = suite_ok("simon")
    expected = sum(q ** n - 2 for q in (3, 5) for n in (1, 2, 3))
    ok = ok and rep["cases"] == expected
    assert report(1, "power sums vanish below q^n - 1", ok, f"{rep['cases']} cases")


def test_02_beta(report):
    rep, ok = suite_ok("beta")
    ok = ok and rep["cases"] == 2 * 301 * 3
    assert report(2, "Bernoulli-Goss congruence, nonvanishing and degree bound", ok, f"{rep['cases']} cases")


def test_03_trivial_zeros(report):
    rep, ok = suite_ok("trivial")
    ok = ok and rep["cases"] == 300 // 2 + 300 // 4
    assert report(3, "trivial zeros Z(1, j) = 0", ok, f"{rep['cases']} cases")


def test_04_interpolation(report):
    rep, ok = suite_ok("interp")
    integer_cases = sum(51 for _ in CONFIGS)
    random_cases = sum((3 ** d - 1) * 20 for d, _ in CONFIGS)
    ok = ok and rep["cases"] == integer_cases + random_cases
    assert report(4, "L-function at integers and modulo p", ok, f"{rep['cases']} cases")


def test_05_even_vanishing(report):
    rep, ok = suite_ok("even")
    even = sum(len([i for i in range(3 ** d - 1) if i % 2 == 0]) for d, _ in CONFIGS)
    ok = ok and rep["cases"] == even * 9
    assert report(5, "even characters vanish at X = 1", ok, f"{rep['cases']} cases")


def test_06_stickelberger_structure(report):
    rep, ok = suite_ok("stick")
    assert report(6, "Stickelberger series structure", ok, f"{rep['cases']} cases")


def test_07_sinnott_cross_oracle(report):
    rep, ok = suite_ok("sinnott")
    # levels 0..2 for d = 1 (1 + 3 + 3 exponent classes), levels 0..1 for d = 2 (1 + 3)
    expected = 1 * (1 + 3 + 3) + 7 * (1 + 3)
    ok = ok and rep["cases"] == expected
    assert report(7, "Sinnott image of Theta equals the L-function", ok, f"{rep['cases']} cases")


def test_08_kernel(report):
    rep, ok = suite_ok("kernel")
    prime = PrimeData(GF(3).theta())
    w = kernel_witness(prime, 1)
    norm = GroupRingElem.norm_element(gamma_group(prime, 1))
    ok = ok and w == norm.scale(w.scalar()) and w.scalar() != 0
    assert report(8, "kernel witnesses of s_n", ok, f"{rep['cases']} cases")


def test_09_invariants(report):
    rep, ok = suite_ok("invariants")
    prime = PrimeData(GF(3).theta())
    m = m_invariant(prime, 1)
    ok = ok and m.value == 0 and n_invariant(prime, 1, 3) == 0
    quad = PrimeData(GF(3).poly([1, 0, 1]))
    ok = ok and all(inequality_report(quad, i).holds for i in range(1, 8))
    assert report(9, "N <= m with certificates and the log bound on m", ok, f"{rep['cases']} cases")


def test_10_ferrero_washington_probe(report):
    rep, ok = suite_ok("fw")
    for d, coeffs in CONFIGS:
        prime = PrimeData(GF(3).poly(coeffs))
        ok = ok and all(not isinstance(n_invariant(prime, i, 3), NotFound) for i in range(1, 3 ** d - 1))
    assert report(10, "N(i) found by level 3 for every i != 0", ok, f"{rep['cases']} cases")


def test_11_infinity(report):
    rep, ok = suite_ok("infty")
    assert report(11, "zeta at infinity, block bounds and Euler-product interpolation", ok, f"{rep['cases']} cases")


def test_12_determinism(report):
    cmd = [sys.executable, "-m", "goss_iwasawa.cli", "verify", "--suite", "all", "--json"]
    first = subprocess.run(cmd + ["--threads", "1"], capture_output=True, check=False)
    second = subprocess.run(cmd + ["--threads", "4"], capture_output=True, check=False)
    third = subprocess.run(cmd + ["--threads", "1"], capture_output=True, check=False)
    ok = (
        first.returncode == 0
        and first.stdout == second.stdout == third.stdout
        and b'"failures": []' in first.stdout
    )
    assert report(12, "byte-identical verify output across runs and thread counts", ok, f"{len(first.stdout)} bytes")
