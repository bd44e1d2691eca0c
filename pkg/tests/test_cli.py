import csv
import io
import json
import math
import subprocess
import sys

import pytest

from mlradii import RadiusResult, ZeroTable
from mlradii.cli import main
from mlradii.radii import radius_starlike
from mlradii.verify import verify_result

from conftest import SIN

SINE = ["--omega", "2", "--beta", "2", "--gamma", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_eval_examples(capsys):
    d = run_json(capsys, "eval", "--omega", "1", "--beta", "1", "--gamma", "1", "--x", "1")
    assert d["value"] == pytest.approx(math.e, rel=1e-15)
    d = run_json(capsys, "eval", *SINE, "--x", "-9.869604401")
    assert abs(d["value"]) < 1e-9
    d = run_json(capsys, "eval", *SINE, "--x", "0", "--order", "1")
    assert d["value"] == pytest.approx(1 / 6)


def test_eval_invalid_parameter_names_constraint(capsys):
    code, out, err = run(capsys, "eval", "--omega", "0", "--beta", "1", "--gamma", "1", "--x", "1")
    assert code == 2
    assert "omega" in err and out == ""


@pytest.mark.parametrize("bad", ["nan", "inf", "pi/2", "1e"])
def test_plain_decimals_only(capsys, bad):
    code, _, _ = run(capsys, "eval", "--omega", bad, "--beta", "1", "--gamma", "1", "--x", "1")
    assert code == 2


def test_eval_nonconvergence_exit_4(capsys):
    code, _, err = run(capsys, "eval", "--omega", "1", "--beta", "1", "--gamma", "1", "--x", "1000000")
    assert code == 4
    assert "error" in err


def test_zeros_command(capsys):
    d = run_json(capsys, "zeros", *SINE, "--target", "lambda", "--count", "3")
    assert d["target"] == "LambdaZeros"
    assert d["zeros"] == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], abs=1e-11)
    assert ZeroTable.from_dict(d).zeros == tuple(d["zeros"])
    d = run_json(capsys, "zeros", *SINE, "--target", "GPrimeZeros", "--count", "1")
    assert d["zeros"][0] == pytest.approx(math.pi / 2, abs=1e-11)


def test_radius_examples(capsys):
    d = run_json(capsys, "radius", "--problem", "star", "--norm", "g", *SINE, "--rho", "0", "--assume-real-zeros")
    assert abs(d["radius"] - math.pi / 2) <= 1e-9
    d = run_json(capsys, "radius", "--problem", "ucv", "--norm", "g", *SINE, "--eta", "1", "--rho", "0",
                 "--assume-real-zeros")
    assert abs(d["radius"] - 0.65327118709440310111) <= 1e-9
    assert d["settings"] == {"tol": 1e-10, "delta": 1e-3, "grid": 720, "assume_real_zeros": True,
                             "verify": False}


def test_radius_strong_rho_zero_is_invalid(capsys):
    code, _, err = run(capsys, "radius", "--problem", "strong", "--norm", "g", *SINE, "--rho", "0")
    assert code == 2
    assert "rho" in err


def test_radius_not_admitted_exit_3(capsys):
    code, _, err = run(capsys, "radius", "--problem", "star", "--norm", "g", *SINE)
    assert code == 3
    assert "W_i" in err


def test_radius_json_round_trip(capsys):
    d = run_json(capsys, "radius", "--problem", "star", "--norm", "g", *SINE, "--assume-real-zeros", "--verify")
    res = RadiusResult.from_dict(d)
    expected, _ = verify_result(radius_starlike(SIN, "g", 0, assume_real_zeros=True))
    assert res == expected
    assert d["verification"]["inner_pass"] and d["verification"]["outer_fail"]
    assert d["verified"] == "passed"


def test_radius_csv_full_precision(capsys):
    code, out, _ = run(capsys, "radius", "--problem", "star", "--norm", "g", *SINE, "--assume-real-zeros",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 2
    header, values = rows
    cell = values[header.index("radius")]
    assert float(cell) == radius_starlike(SIN, "g", 0, assume_real_zeros=True).radius
    assert len(cell.replace(".", "").lstrip("0").split("e")[0]) == 17


def test_radius_table_output(capsys):
    code, out, _ = run(capsys, "radius", "--problem", "convex", "--norm", "g", *SINE, "--assume-real-zeros")
    assert code == 0
    assert "radius" in out and "0.86033358901" in out


def test_sweep_rho_decreasing(capsys):
    d = run_json(capsys, "sweep", "--problem", "star", "--norm", "g", *SINE, "--assume-real-zeros", "--vary",
                 "rho", "--from", "0", "--to", "0.9", "--steps", "5")
    radii = [r["radius"] for r in d["rows"]]
    assert [r["rho"] for r in d["rows"]] == pytest.approx([0, 0.225, 0.45, 0.675, 0.9])
    assert all(b < a for a, b in zip(radii, radii[1:]))
    assert all(r["status"] == "ok" for r in d["rows"])


def test_sweep_alpha_endpoints(capsys):
    d = run_json(capsys, "sweep", "--problem", "alphaconvex", "--norm", "g", *SINE, "--assume-real-zeros",
                 "--vary", "alpha", "--from", "0", "--to", "1", "--steps", "3")
    assert d["rows"][0]["radius"] == pytest.approx(math.pi / 2, abs=1e-9)
    assert d["rows"][-1]["radius"] == pytest.approx(0.8603335890193798, abs=1e-9)


def test_sweep_parallel_keeps_grid_order(capsys):
    args = ["sweep", "--problem", "ucv", "--norm", "g", *SINE, "--assume-real-zeros", "--vary", "eta", "--from",
            "0", "--to", "2", "--steps", "6"]
    serial = run_json(capsys, *args)
    parallel = run_json(capsys, *args, "--jobs", "3")
    assert serial["rows"] == parallel["rows"]


def test_sweep_row_errors(capsys):
    # rho = 1 is outside [0, 1): last row fails, the rest succeed
    d = run_json(capsys, "sweep", "--problem", "star", "--norm", "g", *SINE, "--assume-real-zeros", "--vary",
                 "rho", "--from", "0.5", "--to", "1", "--steps", "3")
    assert [r["status"] == "ok" for r in d["rows"]] == [True, True, False]
    assert "InvalidParameters" in d["rows"][-1]["status"]


def test_sweep_all_rows_fail(capsys):
    code, _, _ = run(capsys, "sweep", "--problem", "star", "--norm", "g", *SINE, "--vary", "rho", "--from", "0",
                     "--to", "0.5", "--steps", "2")
    assert code == 3


@pytest.mark.parametrize("steps, lo, hi", [("1", "0", "0.5"), ("3", "0.5", "0.5")])
def test_sweep_grid_validation(capsys, steps, lo, hi):
    code, _, _ = run(capsys, "sweep", "--problem", "star", "--norm", "g", *SINE, "--vary", "rho", "--from", lo,
                     "--to", hi, "--steps", steps)
    assert code == 2


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--problem", "star", "--norm", "g", *SINE, "--assume-real-zeros",
                       "--vary", "rho", "--from", "0", "--to", "0.5", "--steps", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    assert set(rows[0]) >= {"rho", "radius", "residual", "zeros_used", "status"}


def test_wi_check(capsys):
    d = run_json(capsys, "wi-check", "--omega", "3", "--beta", "1")
    assert d["status"] == "Member"
    assert d["witness"] == {"origin": {"omega": 1.5, "beta": 1.0}, "ops": ["A"]}
    assert run_json(capsys, "wi-check", "--omega", "1.2", "--beta", "1")["status"] == "NonMember"
    assert run_json(capsys, "wi-check", "--omega", "2", "--beta", "2")["status"] == "NonMember"
    assert run_json(capsys, "wi-check", "--omega", "0.5", "--beta", "1")["status"] == "NonMember"
    code, _, _ = run(capsys, "wi-check", "--omega", "3", "--beta", "-1")
    assert code == 2


def test_missing_flag_exit_2(capsys):
    code, _, _ = run(capsys, "eval", "--omega", "1")
    assert code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "mlradii", "wi-check", "--omega", "3", "--beta", "1.5",
                          "--format", "json"], capture_output=True, text=True, check=True)
    d = json.loads(out.stdout)
    assert d["status"] == "Member"
