import json

import pytest

from goss_iwasawa.cli import main
from goss_iwasawa.config import RunConfig
from goss_iwasawa.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_bernoulli_rows(capsys):
    code, data = run_json(capsys, "bernoulli", "--jmax", "2")
    assert code == 0
    assert [(r["j"], r["beta"]) for r in data["rows"]] == [(0, [1]), (1, [1]), (2, [1])]


def test_bernoulli_single_row(capsys):
    code, data = run_json(capsys, "bernoulli", "--jmax", "0")
    assert [(r["j"], r["beta"]) for r in data["rows"]] == [(0, [1])]


def test_bernoulli_congruence_column(capsys):
    from goss_iwasawa.algebra import GF, Poly

    F = GF(3)
    theta = F.theta()
    code, data = run_json(capsys, "bernoulli", "--jmax", "40", "--prime", "0,1")
    for row in data["rows"]:
        assert Poly(F, row["beta"]) % (theta ** 3 - theta) == F.one()
        assert "valuation" in row


def test_bernoulli_table_and_csv(capsys):
    code, out, _ = run(capsys, "bernoulli", "--jmax", "2")
    assert out.splitlines()[2].split() == ["0", "1", "0"]
    code, out, _ = run(capsys, "bernoulli", "--jmax", "1", "--format", "csv")
    assert out == "j,beta,deg\n0,1,0\n1,1,0\n"


def test_lfunction_both_has_empty_diff(capsys):
    code, data = run_json(capsys, "lfunction", "--i", "1", "--y", "7", "--method", "both")
    assert code == 0 and data["diff"] == []
    code, data = run_json(capsys, "lfunction", "--i", "3", "--y", "2", "--method", "both", "--prime", "1,0,1")
    assert code == 0 and data["diff"] == []


def test_lfunction_even_vanishes_at_one(capsys):
    code, data = run_json(capsys, "lfunction", "--i", "0", "--y", "5", "--at-one")
    assert data["at_one"]["exact"]["value"]["rep"] == []
    assert data["at_one"]["exact"]["valuation"] == {"at_least": 4}


def test_lfunction_trivial_case(capsys):
    code, data = run_json(capsys, "lfunction", "--i", "0", "--y", "0")
    assert code == 0
    assert data["coefficients"]["exact"][0] == {"rep": [1], "prec": 4}


def test_lfunction_precision_error(capsys):
    code, _, err = run(capsys, "lfunction", "--i", "1", "--y", "1", "--prec", "10", "--ydigits", "1")
    assert code == 2 and "precision" in err


def test_stickelberger_sharp_at_one(capsys):
    code, out, _ = run(capsys, "stickelberger", "--level", "0", "--i", "1", "--sharp", "--at-one")
    assert code == 0 and out.splitlines()[-1] == "1"


def test_stickelberger_series_json(capsys):
    code, data = run_json(capsys, "stickelberger", "--level", "1", "--i", "2", "--prime", "1,0,1", "--sharp")
    assert code == 0 and data["even"] is True
    assert data["coefficients"][0]["terms"][0] == [[1], 1]


def test_stickelberger_cutoff_below_window(capsys):
    code, _, err = run(capsys, "stickelberger", "--level", "1", "--i", "1", "--xdeg", "1", "--sharp", "--at-one")
    assert code == 2


def test_stickelberger_guard_exit_code(capsys, monkeypatch):
    import goss_iwasawa.cli as cli
    from goss_iwasawa.stickelberger import GroupRingElem

    real = cli.theta_series

    def corrupted(*a, **k):
        series = real(*a, **k)
        series.coeffs[-1] = GroupRingElem.one(series.group)
        return series

    monkeypatch.setattr(cli, "theta_series", corrupted)
    code, _, err = run(capsys, "stickelberger", "--level", "1", "--i", "1", "--sharp", "--at-one")
    assert code == 3 and "guard" in err


def test_invariants(capsys):
    code, data = run_json(capsys, "invariants", "--i", "1")
    assert code == 0
    (row,) = data["rows"]
    assert row["N"] == 0 and row["m"] == 0 and row["holds"]
    code, out, _ = run(capsys, "invariants", "--i", "1")
    assert "OK" in out.splitlines()[2]


def test_invariants_unresolved_exit_code(capsys):
    code, _, err = run(capsys, "invariants", "--p", "5", "--prime", "1,1,1", "--i", "6", "--prec", "1")
    assert code == 4 and "unresolved" in err


def test_sinnott(capsys):
    code, out, _ = run(capsys, "sinnott", "--level", "1")
    assert code == 0
    assert "witness" in out and "zero function  true" in out
    code, data = run_json(capsys, "sinnott", "--level", "1")
    assert data["zero_function"] is True and len(data["witness"]["terms"]) == 3


def test_sinnott_level_zero(capsys):
    code, _, _ = run(capsys, "sinnott", "--level", "0")
    assert code == 2


def test_zeta(capsys):
    code, data = run_json(capsys, "zeta", "--j", "4")
    assert code == 0 and data["agree"] is True
    code, data = run_json(capsys, "zeta", "--x-exp", "2", "--y", "4", "--euler", "6", "--prec", "8")
    assert code == 0 and data["passed"] is True and data["precision"] == 8


def test_zeta_divergence_exit_code(capsys):
    code, _, _ = run(capsys, "zeta", "--x-exp", "0", "--y", "1", "--euler", "4")
    assert code == 2


def test_verify_simon(capsys):
    code, data = run_json(capsys, "verify", "--suite", "simon")
    assert code == 0 and data["suite"] == "simon" and data["failures"] == []


def test_verify_bad_prime(capsys):
    code, _, err = run(capsys, "verify", "--suite", "interp", "--prime", "0,0,1")
    assert code == 2 and "irreducible" in err


def test_verify_single_prime(capsys):
    code, data = run_json(capsys, "verify", "--suite", "stick", "--p", "5", "--prime", "2,1")
    assert code == 0 and data["cases"] > 0


def test_config_file_and_flags(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"prime": "1,0,1", "level": 1, "format": "json"}))
    cfg = RunConfig.from_sources({"level": 0}, str(path))
    assert cfg.prime == (1, 0, 1) and cfg.level == 0 and cfg.format == "json"
    code, out, _ = run(capsys, "stickelberger", "--i", "1", "--sharp", "--at-one", "--config", str(path))
    assert json.loads(out)["prime"] == [1, 0, 1]


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        RunConfig.from_sources({"colour": 1})
    with pytest.raises(ConfigError):
        RunConfig.from_sources({"e": 3, "p": 3})
    with pytest.raises(ConfigError):
        RunConfig.from_sources({"prec": 10, "ydigits": 2})
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        RunConfig.from_sources({}, str(bad))


def test_q9_default_modulus():
    cfg = RunConfig.from_sources({"p": 3, "e": 2})
    assert cfg.field().modulus == (1, 0, 1)


def test_json_output_roundtrips(capsys):
    from goss_iwasawa.algebra import PrimeData, GF
    from goss_iwasawa.goss import lfunction_exact
    from goss_iwasawa.local import ZpApprox
    from goss_iwasawa.serialize import padic_from_json

    code, data = run_json(capsys, "lfunction", "--i", "1", "--y", "4")
    prime = PrimeData(GF(3).theta())
    L = lfunction_exact(prime, 1, ZpApprox(4, 2, 3), 4)
    assert [padic_from_json(prime, c) for c in data["coefficients"]["exact"]] == list(L)
