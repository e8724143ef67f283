"""Command line behaviour: output shape, determinism, round-trips and exit codes."""
import csv
import io
import json
import subprocess
import sys

import pytest

from frobtower.cli import parse_k_range, run
from frobtower.exactlin.scalars import parse_scalar


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def result(*argv):
    code, text = call(*argv, "--no-timestamp")
    assert code == 0, text
    return json.loads(text)["result"]


def test_k_range():
    assert parse_k_range("0..2") == [0, 1, 2]
    assert parse_k_range("3") == [3]
    assert parse_k_range("0,2,4") == [0, 2, 4]


def test_simples_sym3_tower_form():
    res = result("tower", "sym", "--n", "3", "simples")
    rows = res["rows"]
    assert len(rows) == 3
    assert sorted(r["dim_L"] for r in rows) == [1, 1, 2]
    assert all(r["dim_L"] == r["dim_P"] for r in rows)


def test_simples_level_zero():
    rows = result("simples", "--n", "0")["rows"]
    assert [(r["dim_L"], r["dim_P"]) for r in rows] == [(1, 1)]


def test_hecke_d1_matches_sym():
    a = result("simples", "--tower", "hecke:1,0", "--n", "2")
    b = result("simples", "--tower", "sym", "--n", "2")
    assert a == b


def test_measures_example_and_roundtrip():
    res = result("measures", "--tower", "sym", "--n", "1", "--k", "0..2")
    plain = next(s for s in res["systems"] if s["variant"] == "plain")
    sp = next(r for r in plain["spectral"] if r["vertex"] == "(1)" and r["direction"] == "up")
    m2 = next(m for m in sp["moments"] if m["k"] == 2)
    assert parse_scalar(m2["value"]) == 1
    for r in plain["plancherel"] + plain["up"] + plain["down"]:
        val = r.get("mass", r.get("p"))
        assert parse_scalar(val) >= 0


def test_float_mirrors():
    res = result("measures", "--tower", "sym", "--n", "2", "--floats", "--variant", "plain")
    rec = res["systems"][0]["plancherel"][-1]
    assert rec["mass_float"] == float(parse_scalar(rec["mass"]))


def test_branching_json_and_csv():
    res = result("branching", "--tower", "hecke:2,0,1", "--n", "2")
    pair = res["pairs"][1]
    assert pair["kappa"] != pair["kappa_star"]
    code, text = call("branching", "--tower", "sym", "--n", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["level", "mu", "lambda", "kappa", "kappa_star"]
    assert all(r[3] == "1" for r in rows[1:])


def test_output_is_deterministic():
    a = call("measures", "--tower", "hecke:2,0,1", "--n", "2", "--no-timestamp")
    b = call("measures", "--tower", "hecke:2,0,1", "--n", "2", "--no-timestamp")
    assert a == b
    _, with_ts = call("simples", "--n", "2")
    assert "generated" in json.loads(with_ts)


def test_sample_example():
    res = result("sample", "--tower", "sym", "--n", "2", "--steps", "2", "--paths", "10000", "--seed", "7")
    rec = next(r for r in res["marginal"] if r["vertex"] == "(2)")
    assert rec["exact"] == "1/2"
    assert abs(float(parse_scalar(rec["empirical"])) - 0.5) < 0.02
    code, text = call("sample", "--n", "2", "--paths", "3", "--format", "csv")
    assert text.splitlines()[0] == "index,step,vertex"
    assert len(text.splitlines()) == 1 + 3 * 3


def test_casimir_command():
    res = result("casimir", "--tower", "hecke:2,0,1", "--n", "3", "--k", "2")
    rec = res["casimirs"][0]
    assert rec["C_central"] and not rec["C_iota_central"]
    code, text = call("casimir", "--tower", "sym", "--n", "3", "--format", "pretty")
    assert code == 0 and "C_{3,2} = 3*1" in text


def test_verify_exit_codes():
    assert call("verify", "--tower", "sym", "--n", "3", "--failures-only")[0] == 0
    assert call("verify", "--tower", "sym", "--n", "3", "--negative-control", "dual")[0] == 4
    assert call("verify", "--tower", "sym", "--n", "3", "--negative-control", "jm")[0] == 5


@pytest.mark.parametrize("argv", [
    ["simples", "--tower", "bogus"],
    ["simples", "--tower", "sym", "--n", "7"],
    ["frobnicate"],
    ["measures", "--n", "0"],
    ["measures", "--k", "x..y"],
    ["casimir", "--n", "3", "--k", "5"],
    ["casimir", "--n", "3", "--format", "csv"],
])
def test_config_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_splitting_failure_exit_3():
    assert call("simples", "--tower", "sergeev", "--n", "2", "--field", "q")[0] == 3
    assert call("simples", "--tower", "sergeev", "--n", "2")[0] == 0


def test_env_ceiling(monkeypatch):
    monkeypatch.setenv("FROBTOWER_MAX_DIM", "10")
    assert call("simples", "--n", "4")[0] == 2
    assert call("simples", "--n", "4", "--max-dim", "24")[0] == 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "frobtower.cli", "simples", "--n", "2",
                           "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("level,label")
