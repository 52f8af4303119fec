import io
import json
import sys
from fractions import Fraction

import jsonschema
import pytest

from surfmld import cli
from surfmld.algebra import NEG_INF, POS_INF
from surfmld.report import REPORT_SCHEMA, Report, UnsupportedMode, classify, format_report, value_json
from surfmld.cli import run_command

from conftest import EXAMPLE2


def _json(argv):
    code, out = run_command(argv + ["--json"])
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    return code, data


def test_mld_example2_json():
    code, data = _json(["mld", EXAMPLE2])
    assert code == 0
    assert data["value"] == {"type": "rat", "num": 2, "den": 3}
    assert data["classification"] == "klt"
    assert (data["certificate"]["w1"], data["certificate"]["w2"]) == (1, 1)
    assert data["certificate"]["a_f"] == {"num": 2, "den": 3}
    assert [d["a"] for d in data["ledger"] if d["kind"] == "exceptional"] == [
        {"num": 2, "den": 3}, {"num": 1, "den": 1}, {"num": 1, "den": 1}, {"num": 4, "den": 3}]
    assert any("cross-check: pass" in line for line in data["diagnostics"])
    assert not any("FAIL" in line for line in data["diagnostics"])


def test_mld_not_lc():
    code, data = _json(["mld", "(x*y)^(2)"])
    assert code == 0
    assert data["value"] == {"type": "neg_inf"}
    assert data["classification"] == "not-lc"


def test_mld_curve_boundary_is_lc_not_klt():
    code, data = _json(["mld", "(x)"])
    assert code == 0
    assert data["value"] == {"type": "rat", "num": 1, "den": 1}
    assert data["classification"] == "lc-not-klt"
    curves = [d for d in data["ledger"] if d["kind"] == "strict_curve"]
    assert curves and "k" not in curves[0]


@pytest.mark.parametrize("argv", [
    ["lct", "(x^2 + y^3)"], ["resolve", EXAMPLE2], ["search", EXAMPLE2, "--bound", "8"],
    ["search", "(x*y)^(2)", "--bound", "4"], ["verify-examples"], ["corpus", "--seed", "0", "--count", "5"],
    ["mld", "1"], ["lct", "1"],
])
def test_every_report_validates(argv):
    code, data = _json(argv)
    assert code == 0
    assert data["command"] == argv[0]


def test_lct_value():
    code, data = _json(["lct", "(x^2 + y^3)"])
    assert data["value"] == {"type": "rat", "num": 5, "den": 6}
    code, data = _json(["lct", "1"])
    assert data["value"] == {"type": "pos_inf"}


def test_search_lists_minimizers():
    code, out = run_command(["search", "(x^2, y^3)^(5/6)", "--bound", "12"])
    assert code == 0
    assert "minimizer: weights (3, 2)" in out


def test_text_report():
    code, out = run_command(["mld", EXAMPLE2])
    assert code == 0
    assert "value: 2/3" in out
    assert "classification: klt" in out
    assert "certificate: weights (1, 1)" in out


def test_dot_output():
    code, out = run_command(["resolve", EXAMPLE2, "--dot"])
    assert code == 0
    assert out.startswith("graph dual {")
    for edge in ["E1 -- E3", "E2 -- E3", "E3 -- E4"]:
        assert edge in out
    assert "E1 -- E2" not in out
    assert out.rstrip().endswith("}")


def test_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(EXAMPLE2 + "\n"))
    code, data = _json(["mld", "-"])
    assert code == 0
    assert data == _json(["mld", EXAMPLE2])[1]


def test_exit_code_parse_error():
    assert run_command(["mld", "(x^2 +"])[0] == 2
    assert run_command(["mld", "(x)^(101)"])[0] == 2
    assert run_command(["nonsense"])[0] == 2


def test_exit_code_irrational_center():
    assert run_command(["mld", "(x^2 + y^2)"])[0] == 3
    assert run_command(["resolve", "(x^2 + y^2)"])[0] == 3


def test_exit_code_budget():
    assert run_command(["search", EXAMPLE2, "--bound", "10", "--budget", "0"])[0] == 4
    assert run_command(["mld", EXAMPLE2, "--budget", "0"])[0] == 4


def test_exit_code_mismatch(monkeypatch):
    real = cli.mld_weighted

    def skewed(*args, **kwargs):
        cert = real(*args, **kwargs)
        cert.value = cert.value + 1
        return cert

    monkeypatch.setattr(cli, "mld_weighted", skewed)
    assert run_command(["mld", EXAMPLE2])[0] == 5


def test_classification_invariant():
    assert classify(NEG_INF, []) == "not-lc"
    assert classify(0, []) == "lc-not-klt"
    assert classify(1, [1]) == "lc-not-klt"
    assert classify(1, [Fraction(1, 2)]) == "klt"
    assert classify(2, []) == "klt"


def test_value_json():
    assert value_json(NEG_INF) == {"type": "neg_inf"}
    assert value_json(POS_INF) == {"type": "pos_inf"}


def test_dot_only_for_resolve():
    rep = Report("mld", "(x)", 1, "lc-not-klt")
    with pytest.raises(UnsupportedMode):
        format_report(rep, "dot")
    with pytest.raises(UnsupportedMode):
        format_report(rep, "yaml")
