import argparse
import csv
import io
import json
import math
import subprocess
import sys

import pytest

from altzeta.cli import parse_complex, parse_complex_list, run
from altzeta.report import from_sentinel, render_json, to_jsonable


def run_json(capsys, argv):
    code = run([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def strip_runtime(obj):
    if isinstance(obj, dict):
        return {k: strip_runtime(v) for k, v in obj.items() if k != "runtime_ms"}
    if isinstance(obj, list):
        return [strip_runtime(v) for v in obj]
    return obj


# parsing


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1", 1),
        ("-2.5", -2.5),
        ("1+2i", 1 + 2j),
        ("1+2j", 1 + 2j),
        ("(1,2)", 1 + 2j),
        ("( 1 , -2 )", 1 - 2j),
        ("i", 1j),
        ("-i", -1j),
        ("0.5-3.25i", 0.5 - 3.25j),
        ("1e-3+2e1i", 0.001 + 20j),
    ],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


def test_parse_forms_normalize_identically():
    assert parse_complex("0.5+1.5i") == parse_complex("(0.5,1.5)")


@pytest.mark.parametrize("text", ["bogus", "(1,2,3)", "1+", "inf", "nan", ""])
def test_parse_complex_rejects(text):
    with pytest.raises(argparse.ArgumentTypeError):
        parse_complex(text)


def test_parse_complex_list():
    assert parse_complex_list("1,(2,3),1-1i") == [1, 2 + 3j, 1 - 1j]


# examples


def test_eval_gamma_tilde_one(capsys):
    code, doc = run_json(capsys, ["eval", "gamma-tilde", "--z", "1"])
    assert code == 0
    assert doc["schema_version"] == "1"
    re, im = doc["results"][0]["value"]
    assert abs(re - 1.5707963267948966) <= 1e-12 * math.pi / 2
    assert im == 0


def test_verify_wallis_example(capsys):
    code, doc = run_json(capsys, ["verify", "wallis", "--pairs", "100000", "--tol", "1e-8"])
    assert code == 0
    row = doc["results"][0]
    assert row["pass"] is True
    assert abs(row["lhs"][0] - math.pi / 2) <= 1e-9


def test_bogus_shift_list(capsys):
    assert run(["verify", "mizuno", "--zs", "bogus"]) == 2
    err = capsys.readouterr().err
    assert "usage" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "zeta-e", "--s", "2", "--z", "1"],
        ["eval", "zeta-e", "--s", "(2,1)", "--z", "0.5", "--method", "direct"],
        ["eval", "gamma-tilde", "--z", "1+1i", "--route", "product"],
        ["eval", "gamma-tilde", "--z", "2", "--route", "series"],
        ["eval", "psi-tilde", "--z", "1"],
        ["eval", "psi-tilde", "--z", "1", "--order", "2"],
        ["eval", "stieltjes", "--k", "1", "--z", "1"],
        ["verify", "mizuno", "--zs", "1+1i,1-1i", "--tol", "1e-8"],
        ["verify", "mizuno", "--zs", "0.5,1.5", "--cutoff", "20"],
        ["verify", "kurokawa", "--n", "4", "--x", "2", "--y", "0.5", "--tol", "1e-8"],
        ["verify", "lerch", "--x", "1", "--tol", "1e-8"],
        ["verify", "lerch-qi", "--x", "1", "--y", "2"],
        ["verify", "lerch-classical", "--z", "0.5", "--tol", "1e-8"],
        ["verify", "suite", "--seed", "3", "--cases", "5"],
    ],
)
def test_commands_succeed(capsys, argv):
    code, doc = run_json(capsys, argv)
    assert code == 0
    assert doc["summary"]
    assert doc["request"]["target"] == argv[1]


def test_eval_values(capsys):
    _, doc = run_json(capsys, ["eval", "zeta-e", "--s", "2", "--z", "1"])
    assert abs(doc["results"][0]["value"][0] - math.pi**2 / 12) <= 1e-14
    _, doc = run_json(capsys, ["eval", "psi-tilde", "--z", "1"])
    assert abs(doc["results"][0]["value"][0] + math.log(2)) <= 1e-14


def test_config_echo(capsys):
    _, doc = run_json(capsys, ["verify", "mizuno", "--zs", "1", "--cutoff", "12"])
    assert doc["config"]["target_rel_error"] == 1e-12
    meta = doc["results"][0]["metadata"]
    assert meta["cutoff"] == 12
    assert meta["tail_method"] == "eta-expansion"


def test_suite_records_seed(capsys):
    _, doc = run_json(capsys, ["verify", "suite", "--seed", "9", "--cases", "3"])
    assert doc["request"]["seed"] == 9
    assert all(r["metadata"]["seed"] == 9 for r in doc["results"])
    assert doc["summary"]["passed"] == 3
    assert doc["summary"]["property_failures"] == 0


def test_table_default_csv(capsys):
    code = run(["table", "gamma-tilde", "--from", "0.5", "--to", "2", "--step", "0.5"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [float(r["x"]) for r in rows] == [0.5, 1.0, 1.5, 2.0]
    assert float(rows[1]["gamma_tilde_re"]) == pytest.approx(math.pi / 2, rel=1e-13)
    assert float(rows[3]["gamma_tilde_re"]) == pytest.approx(1.0, rel=1e-13)


def test_bench_accel(capsys):
    code, doc = run_json(capsys, ["bench", "accel", "--spec", "1+1i,2", "--sizes", "1e3,1e4"])
    assert code == 0
    assert len(doc["results"]) == 4
    assert {r["method"] for r in doc["results"]} == {"paired", "eta-expansion"}


def test_text_format(capsys):
    assert run(["verify", "lerch", "--x", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS lerch")


# exit codes


def test_failure_exit_code(capsys):
    # an impossible tolerance makes the identity check fail
    assert run(["verify", "lerch", "--x", "1", "--tol", "1e-30"]) == 1


def test_nonconvergence_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("REGPROD_MAX_TERMS", "10")
    assert run(["eval", "zeta-e", "--s", "0.3+1i", "--z", "1", "--method", "direct"]) == 3


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["eval", "nothing"],
        ["eval", "zeta-e", "--s", "2"],
        ["verify", "wallis", "--pairs", "0"],
        ["verify", "wallis", "--pairs", "10", "--tol", "-1"],
        ["verify", "mizuno", "--zs", "5", "--cutoff", "2"],
        ["eval", "gamma-tilde", "--z", "0"],
        ["eval", "zeta-e", "--s", "-1", "--z", "1", "--method", "direct"],
        ["eval", "zeta-e", "--s", "1", "--z", "1", "--format", "xml"],
        ["table", "gamma-tilde", "--from", "2", "--to", "1", "--step", "0.5"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_bad_env_var(capsys, monkeypatch):
    monkeypatch.setenv("REGPROD_MAX_TERMS", "lots")
    assert run(["eval", "zeta-e", "--s", "2", "--z", "1"]) == 2


def test_env_var_applies(capsys, monkeypatch):
    monkeypatch.setenv("REGPROD_MAX_TERMS", "5000")
    _, doc = run_json(capsys, ["eval", "zeta-e", "--s", "2", "--z", "1"])
    assert doc["config"]["max_terms"] == 5000


# serialization


def test_determinism(capsys):
    argv = ["verify", "suite", "--seed", "11", "--cases", "4"]
    _, a = run_json(capsys, argv)
    _, b = run_json(capsys, argv)
    assert strip_runtime(a) == strip_runtime(b)


def test_json_csv_fidelity(capsys):
    argv = ["verify", "mizuno", "--zs", "0.3+2i,4-1i,1.7"]
    _, doc = run_json(capsys, argv)
    run([*argv, "--format", "csv"])
    row = next(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    res = doc["results"][0]
    for key in ("lhs", "rhs"):
        assert float(row[f"{key}_re"]) == res[key][0]
        assert float(row[f"{key}_im"]) == res[key][1]
    for key in ("abs_err", "rel_err", "tol"):
        assert float(row[key]) == res[key]
    assert f"{float(row['lhs_re']):.17g}" == f"{res['lhs'][0]:.17g}"


def test_sentinels_round_trip():
    doc = to_jsonable({"a": [math.inf, -math.inf, math.nan, 1.25], "b": complex(math.nan, 2)})
    text = render_json(doc)
    back = json.loads(text)
    assert back["a"][:3] == ["Infinity", "-Infinity", "NaN"]
    vals = [from_sentinel(v) for v in back["a"]]
    assert vals[0] == math.inf and vals[1] == -math.inf and math.isnan(vals[2])
    assert vals[3] == 1.25
    assert back["b"] == ["NaN", 2.0]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "altzeta", "eval", "gamma-tilde", "--z", "2", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["value"][0] == pytest.approx(1.0, rel=1e-14)
