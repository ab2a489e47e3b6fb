import json
import math
import subprocess
import sys

import numpy as np
import pytest

from rationalquad import cli
from rationalquad.errors import NonPositiveBeta
from rationalquad.examples import integrand_function, pole_preset
from rationalquad.measures import BaseMeasure
from rationalquad.ratgauss import build_pf, integrate


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_i1_with_gamma(capsys, tmp_path):
    path = tmp_path / "rule.json"
    code, _, _ = _run(capsys, "generate", "--measure", "legendre", "--preset", "i1", "--omega", "2",
                      "--n", "10", "--m", "20", "--method", "pf", "--gamma", "--output", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert len(doc["nodes"]) == 10 and len(doc["weights"]) == 10
    assert doc["gamma_n"] == pytest.approx(1.48e-24, rel=5e-3)
    assert len(doc["beta_hats"]) == 11
    assert doc["method"] == "pf" and doc["m"] == 20
    assert set(doc) == {"n", "m", "measure", "method", "poles", "nodes", "weights", "gamma_n",
                        "beta_hats"}
    assert doc["poles"][0] == {"zeta_re": -0.5, "zeta_im": 0.0, "multiplicity": 1}


def test_generate_rejects_m_above_2n(capsys, tmp_path):
    poles = tmp_path / "poles.json"
    poles.write_text(json.dumps([{"zeta_re": 0.5, "zeta_im": 0.0, "multiplicity": 1}]))
    code, _, err = _run(capsys, "generate", "--measure", "legendre", "--poles", str(poles),
                        "--n", "4", "--m", "99")
    assert code == 2
    assert json.loads(err)["error"] == "InvalidInput"


def test_generate_case4_pf_is_unsupported(capsys):
    code, _, err = _run(capsys, "generate", "--measure", "laguerre", "--preset", "i6", "--n", "8",
                        "--m", "16", "--method", "pf")
    assert code == 3
    payload = json.loads(err)
    assert payload["error"] == "UnsupportedCase" and payload["hint"] == "use disc"


def test_generate_auto_falls_back_and_records_method(capsys):
    code, out, _ = _run(capsys, "generate", "--preset", "i6", "--n", "4", "--m", "8")
    assert code == 0 and json.loads(out)["method"] == "disc"
    code, out, _ = _run(capsys, "generate", "--preset", "i1", "--omega", "2", "--n", "4", "--m", "8")
    assert code == 0 and json.loads(out)["method"] == "pf"


def test_auto_falls_back_on_nonpositive_beta(monkeypatch):
    def unstable(*args, **kwargs):
        raise NonPositiveBeta("beta_3 = -1 is not positive", 3, -1.0)

    monkeypatch.setattr(cli, "build_pf", unstable)
    rule = cli.build_rule(BaseMeasure.legendre(), pole_preset("i1", 2.0, 4), 4, 4, "auto", False)
    assert rule.method == "disc"
    with pytest.raises(NonPositiveBeta):
        cli.build_rule(BaseMeasure.legendre(), pole_preset("i1", 2.0, 4), 4, 4, "pf", False)
    assert cli._hint(NonPositiveBeta("x", 1, -1.0)) == "lower m or use disc"


def test_round_trip_is_bit_for_bit(capsys, tmp_path):
    path = tmp_path / "rule.json"
    code, _, _ = _run(capsys, "generate", "--preset", "i5", "--eta", "-1", "--n", "6", "--m", "11",
                      "--method", "disc", "--output", str(path))
    assert code == 0
    loaded = cli.load_rule(str(path))
    rule = cli.build_rule(BaseMeasure.laguerre(), pole_preset("i5", -1.0, 11), 6, 11, "disc", False)
    np.testing.assert_array_equal(loaded.nodes, rule.nodes)
    np.testing.assert_array_equal(loaded.weights, rule.weights)
    g = integrand_function("i5", -1.0)
    assert integrate(loaded, g) == integrate(rule, g)
    assert loaded.poles == rule.poles and loaded.measure == rule.measure


def test_round_trip_with_gamma_and_jacobi(tmp_path):
    measure = BaseMeasure.jacobi(-0.5, 0.0, (0.0, 1.0))
    rule = build_pf(measure, pole_preset("i2", 0.5, 6), 5, want_gamma=True)
    path = tmp_path / "rule.json"
    path.write_text(json.dumps(cli.rule_to_dict(rule)))
    loaded = cli.load_rule(str(path))
    assert loaded.gamma_n == rule.gamma_n
    np.testing.assert_array_equal(loaded.beta_hats, rule.beta_hats)
    assert loaded.measure == measure


def test_generate_from_pole_file_with_conjugate_records(capsys, tmp_path):
    poles = tmp_path / "poles.json"
    poles.write_text(json.dumps({"poles": [{"zeta_re": 0.1, "zeta_im": 0.4, "multiplicity": 1},
                                           {"zeta_re": 0.1, "zeta_im": -0.4, "multiplicity": 1}]}))
    code, out, _ = _run(capsys, "generate", "--measure", "jacobi", "--a", "0.5", "--b", "0.5",
                        "--poles", str(poles), "--n", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["m"] == 2 and doc["measure"]["kind"] == "jacobi"


@pytest.mark.parametrize("argv", [
    ["generate", "--preset", "i1", "--n", "4"],                        # missing --m
    ["generate", "--measure", "legendre", "--n", "4"],                 # no pole source
    ["generate", "--poles", "x.json", "--n", "4"],                     # missing measure
    ["generate", "--preset", "i1", "--omega", "2", "--eta", "-1", "--n", "4", "--m", "4"],
    ["generate", "--preset", "i1", "--omega", "0.5", "--n", "4", "--m", "4"],
    ["generate", "--measure", "legendre", "--poles", "/nonexistent/poles.json", "--n", "4"],
])
def test_generate_validation_errors(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and json.loads(err)["error"]


def test_example_i1_beats_gauss(capsys):
    code, out, _ = _run(capsys, "example", "--name", "i1", "--omega", "1.1", "--n", "11", "--m", "22",
                        "--method", "pf", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["error"] <= 1e-14
    assert 0.5 * 1.09e-4 <= report["gauss_error"] <= 1.5 * 1.09e-4


def test_example_i4_gauss_column(capsys):
    code, out, _ = _run(capsys, "example", "--name", "i4", "--n", "10", "--m", "20", "--method",
                        "disc", "--json")
    report = json.loads(out)
    assert code == 0 and 0.5 * 2.22e-8 <= report["gauss_error"] <= 1.5 * 2.22e-8


def test_example_i5_small_rule(capsys):
    code, out, _ = _run(capsys, "example", "--name", "i5", "--eta", "-1", "--n", "2", "--m", "3",
                        "--method", "disc", "--json")
    report = json.loads(out)
    assert code == 0 and abs(report["value"] - 0.113) <= 1e-3


def test_example_text_output(capsys):
    code, out, _ = _run(capsys, "example", "--name", "i3", "--n", "4", "--gamma", "--method", "pf")
    assert code == 0
    assert "rational" in out and "gauss error" in out and "gamma_n" in out


@pytest.mark.parametrize("table_id", sorted(cli.TABLES))
def test_tables_are_consistent(capsys, table_id):
    code, out, _ = _run(capsys, "table", "--id", table_id, "--json")
    assert code == 0
    rows = json.loads(out)
    name, blocks, _, m_of, want_gamma = cli.TABLES[table_id]
    assert len(rows) == sum(len(ns) for _, ns in blocks)
    for row in rows:
        assert row["m"] == m_of(row["n"]) and row["name"] == name
        assert math.isfinite(row["value"])
        assert (row["gamma_n"] is not None) == want_gamma
    # the largest rule of every block reaches the binary64 floor
    index = 0
    for _, ns in blocks:
        index += len(ns)
        assert rows[index - 1]["error"] <= 5e-14


def test_table_text_output(capsys):
    code, out, _ = _run(capsys, "table", "--id", "3.8")
    assert code == 0 and len(out.strip().splitlines()) == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rationalquad", "example", "--name", "i4", "--n", "3",
                           "--json"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["name"] == "i4"
