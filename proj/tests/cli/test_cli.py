import csv
import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

CLI = os.environ.get("CONESPEC_CLI", "conespec")
SCHEMAS = pathlib.Path(os.environ.get("CONESPEC_SCHEMAS", pathlib.Path(__file__).parents[2] / "schemas" / "v1"))


def run(*args, env=None, cwd=None):
    full_env = {k: v for k, v in os.environ.items() if k != "CONE_SPECTRA_TOL"}
    full_env.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env, cwd=cwd)


def report(*args, **kwargs):
    proc = run("--compact", *args, **kwargs)
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    schema = json.loads((SCHEMAS / f"{doc['command']}.json").read_text())
    jsonschema.Draft202012Validator(schema).validate(doc)
    return doc


def test_spectrum_example():
    doc = report("spectrum", "--m", "4", "--group", "trivial", "--r", "1", "--kmax", "5")
    series = doc["results"]["series"]
    assert {s["chirality"] for s in series} == {"+", "-"}
    for s in series:
        assert s["multiplicities"] == [2, 6, 12, 20, 30, 42]


def test_spectrum_quotient_lifts():
    doc = report("spectrum", "--m", "4", "--group", "antipodal", "--kmax", "3")
    series = doc["results"]["series"]
    assert sorted({s["lift_id"] for s in series}) == [0, 1]
    for k in range(4):
        total = sum(s["multiplicities"][k] for s in series if s["chirality"] == "+")
        assert total == (k + 1) * (k + 2)


def test_spectrum_group_parameters_and_file(tmp_path):
    doc = report("spectrum", "--m", "4", "--group", "cyclic", "--param", "n=3", "--kmax", "2")
    assert doc["results"]["group"]["order"] == 3
    path = tmp_path / "group.json"
    path.write_text(json.dumps({"m": 4, "kind": "catalog", "name": "quaternion"}))
    doc = report("spectrum", "--m", "4", "--group-file", str(path), "--kmax", "2")
    assert doc["results"]["group"]["order"] == 8


def test_spectrum_csv():
    proc = run("--csv", "spectrum", "--m", "4", "--kmax", "2")
    assert proc.returncode == 0
    rows = list(csv.reader(proc.stdout.splitlines()))
    assert rows[0] == ["k", "lambda", "mult_plus", "mult_minus"]
    assert rows[1] == ["0", "1.5", "2", "2"]
    proc = run("--csv", "spectrum", "--m", "4", "--group", "antipodal", "--kmax", "2")
    assert proc.stdout.splitlines()[0] == "lift_id,k,lambda,mult_plus,mult_minus"


def test_hodge():
    doc = report("hodge", "--m", "5", "--q", "1", "--kmax", "2")
    entries = doc["results"]["entries"]
    assert entries and all(e["q"] == 1 for e in entries)


def test_rates_and_wallcross():
    doc = report("rates", "--m", "4", "--source", "dirac", "--kmax", "3")
    betas = [r["beta"] for r in doc["results"]["rates"]]
    assert betas == [-6, -5, -4, -3, 0, 1, 2, 3]
    doc = report("rates", "--m", "4", "--source", "laplace", "--q", "0", "--kmax", "3")
    assert [r["beta"] for r in doc["results"]["rates"]] == [-5, -4, -3, -2, 0, 1, 2, 3]
    doc = report("wallcross", "--m", "4", "--kmax", "3", "--beta2", "-0.5", "--beta1", "0.5")
    assert doc["results"]["jump"] == 2
    doc = report("wallcross", "--m", "4", "--kmax", "3", "--beta2", "-0.5", "--beta1", "0.5", "--convention", "acf")
    assert doc["results"]["index_difference"] == -2


def test_rates_from_list():
    doc = report("rates", "--m", "4", "--source", "list", "--spectrum", "1.5:2,-1.5:2", "--delta", "1")
    assert doc["results"]["rates"] == [{"beta": -2.0, "d": 2}, {"beta": 1.0, "d": 2}]


def test_wallcross_collision_is_an_input_error():
    proc = run("wallcross", "--m", "4", "--kmax", "3", "--beta2", "0", "--beta1", "0.5")
    assert proc.returncode == 1
    assert proc.stderr.startswith("error:")


def test_curves_example(tmp_path):
    proc = run("curves", "--pairs", "0:2,3:4", "--rmin", "0.05", "--rmax", "10", "--n", "256",
               "--out-dir", str(tmp_path))
    assert proc.returncode == 0, proc.stderr
    files = sorted(tmp_path.glob("*.csv"))
    assert len(files) == 2
    flat = next(f for f in files if "lambda0_" in f.name)
    rows = list(csv.DictReader(flat.read_text().splitlines()))
    assert len(rows) == 256
    assert list(rows[0]) == ["r", "plus_branch", "minus_branch"]
    assert all(float(r["plus_branch"]) == 2.0 and float(r["minus_branch"]) == -2.0 for r in rows)


def test_modes_and_thresholds():
    doc = report("modes", "--m", "4", "--lambda", "1.2", "--mu", "0.7")
    assert doc["results"]["max_residual"] < 1e-8
    assert doc["results"]["max_integrator_deviation"] < 1e-7
    proc = run("modes", "--m", "4", "--lambda", "1.2", "--mu", "0.7", "--max-residual", "1e-300")
    assert proc.returncode == 2


def test_greens():
    for args in (["--lambda", "0.5", "--mu", "1"], ["--lambda", "0", "--mu", "2"], ["--lambda", "1", "--mu", "0"]):
        doc = report("greens", "--m", "4", *args, "--eval", "1,2,3")
        verification = doc["results"]["verification"]
        assert verification["max_residual"] < 1e-6
        assert abs(verification["calibration"] - 1) < 1e-6
    doc = report("greens", "--m", "4", "--lambda", "0.5", "--mu", "1", "--bump", "1:3", "--no-verify")
    assert "verification" not in doc["results"]


def test_ledger_examples():
    doc = report("ledger", "--ind-cfs", "3", "--ind-acf", "-1")
    assert doc["results"] == {"total": 2}
    doc = report("ledger", "--ind-cfs", "0", "--ind-acf", "0", "--dims", "2,5,4,1")
    assert doc["results"]["exactness_ok"] is True
    doc = report("ledger", "--ind-cfs", "0", "--ind-acf", "0", "--dims", "1,3,1,0")
    assert doc["results"]["exactness_ok"] is False


@pytest.mark.parametrize("args", [
    ["spectrum", "--m", "4", "--kmax", "4"],
    ["hodge", "--m", "4", "--q", "0", "--kmax", "2"],
    ["rates", "--m", "5", "--kmax", "2"],
    ["wallcross", "--m", "4", "--beta2", "-10.5", "--beta1", "4.5"],
    ["modes", "--m", "3", "--lambda", "0", "--mu", "1"],
    ["greens", "--m", "3", "--lambda", "0.3", "--mu", "-1"],
    ["ledger", "--ind-cfs", "1", "--ind-acf", "1"],
])
def test_validate_and_determinism(args):
    first = run("--validate", *args)
    second = run("--validate", *args)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    report(*args)


def test_input_errors():
    assert run("spectrum", "--m", "4", "--group", "nosuch").returncode == 1
    assert run("spectrum", "--m", "5", "--group", "antipodal").returncode == 1
    assert run("spectrum", "--m", "4", "--bogus").returncode == 1
    assert run("hodge", "--m", "4", "--q", "9").returncode == 1
    assert run("nosuch").returncode == 1
    assert run("rates", "--m", "4", "--source", "laplace", "--q", "3").returncode == 1


def test_tolerance_environment():
    ok = run("--compact", "spectrum", "--m", "4", "--kmax", "1", env={"CONE_SPECTRA_TOL": "residue=1e-3"})
    assert ok.returncode == 0
    assert json.loads(ok.stdout)["diagnostics"]["tolerances"]["residue"] == 1e-3
    flag = run("--compact", "--tol", "matrix=1e-7", "spectrum", "--m", "4", "--kmax", "1",
               env={"CONE_SPECTRA_TOL": "residue=1e-3"})
    tolerances = json.loads(flag.stdout)["diagnostics"]["tolerances"]
    assert tolerances["residue"] == 1e-3 and tolerances["matrix"] == 1e-7
    bad = run("spectrum", "--m", "4", env={"CONE_SPECTRA_TOL": "nonsense"})
    assert bad.returncode == 1
    assert "error:" in bad.stderr
