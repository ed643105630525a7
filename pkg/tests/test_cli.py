import csv
import io
import json
import math
import subprocess
import sys

import pytest

from itespec import cli
from itespec.errors import NumericalError


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ite1d_rational_example(capsys):
    code, out, _ = run(["ite1d", "--gamma-rational", "2/1", "--rmax", "10",
                        "--mode", "algebraic", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [round(float(r["lambda"]) / math.pi, 12) for r in rows] == [1, 2, 3]
    assert all(r["alg_mult"] == "3" and r["kind"] == "common_zero" for r in rows)
    assert list(rows[0]) == cli.EIGEN_COLUMNS


def test_weyl_n2_json(tmp_path):
    out = tmp_path / "w.json"
    code = cli.main(["weyl", "--n", "2", "--m", "4", "--rmax", "300", "--format", "json", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert abs(data["meta"]["fit_coefficient"] - 0.75) <= 0.075
    assert list(data["rows"][0]) == cli.COUNT_COLUMNS
    assert data["meta"]["version"] and data["meta"]["tolerances"]


def test_unknown_flag_is_usage_error(tmp_path, capsys):
    out = tmp_path / "x.csv"
    with pytest.raises(SystemExit) as info:
        cli.main(["ite1d", "--gamma", "2", "--rmax", "10", "--bogus", "--out", str(out)])
    assert info.value.code == 2
    assert not out.exists()


@pytest.mark.parametrize("argv", [
    ["ite1d", "--rmax", "10"],
    ["ite1d", "--gamma", "2", "--m", "4", "--rmax", "10"],
    ["ite1d", "--gamma", "1", "--rmax", "10"],
    ["ite1d", "--gamma", "2", "--rmax", "-1"],
    ["ite1d", "--gamma", "2", "--rmax", "10", "--n", "3"],
    ["itend", "--m", "4", "--rmax", "10"],
    ["itend", "--m", "4", "--rmax", "10", "--n", "1"],
    ["weyl", "--m", "4", "--n", "2", "--rmax", "10", "--grid", "5,3"],
    ["weyl", "--m", "4", "--n", "2", "--rmax", "10", "--grid", "5,30"],
    ["weyl", "--m", "4", "--n", "2", "--rmax", "10", "--grid", "a,b"],
    ["weyl", "--m", "4", "--n", "2", "--rmax", "10", "--mode", "bogus"],
    ["ite1d", "--gamma", "2", "--rmax", "10", "--tol", "0"],
])
def test_usage_errors(argv, tmp_path, capsys):
    out = tmp_path / "o.csv"
    with pytest.raises(SystemExit) as info:
        cli.main(argv + ["--out", str(out)])
    assert info.value.code == 2
    assert not out.exists()


def test_numerical_failure_exit_code(monkeypatch, tmp_path, capsys):
    def boom(*a, **k):
        raise NumericalError("did not converge", cell=1)

    monkeypatch.setattr(cli.ite_1d_complex, "enumerate_complex_ites", boom)
    out = tmp_path / "c.csv"
    code = cli.main(["complex1d", "--gamma", "1.5", "--rmax", "10", "--out", str(out)])
    err = capsys.readouterr().err
    assert code == 1 and "did not converge" in err and not out.exists()


def test_scatter_mismatch_exit_code(monkeypatch, capsys):
    real = cli.scattering.amplitude_zeros
    monkeypatch.setattr(cli.scattering, "amplitude_zeros",
                        lambda cfg, l, r, step=5e-3: real(cfg, l, r, step=step)[1:])
    code, out, err = run(["scatter", "--n", "3", "--m", "4", "--rmax", "8"], capsys)
    assert code == 1 and "mismatch" in err
    assert "no amplitude zero" in out


def test_scatter_ok(capsys):
    code, out, _ = run(["scatter", "--n", "3", "--m", "4", "--rmax", "10"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["status"] == "matched" for r in rows)


def test_complex1d_listing_and_grid(capsys):
    code, out, _ = run(["complex1d", "--gamma", "2", "--rmax", "10"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["mult"] for r in rows] == ["3", "3", "3"]
    code, out, _ = run(["complex1d", "--gamma", "2", "--rmax", "10", "--grid", "4,7,10"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["count"] for r in rows] == ["3", "6", "9"]


def test_weyl_1d(capsys):
    code, out, _ = run(["weyl", "--n", "1", "--gamma-rational", "3/8", "--rmax", "1000",
                        "--grid", "500,1000", "--mode", "alg", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert all(r["residual_scaled"] <= 4 for r in data["rows"])


def test_itend_rows(capsys):
    code, out, _ = run(["itend", "--n", "3", "--gamma", "2", "--rmax", "8", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["meta"]["m"] == 4.0
    lam = [(r["lambda"], r["l"]) for r in data["rows"]]
    assert lam == sorted(lam)
    assert all(r["geom_mult"] == 2 * r["l"] + 1 for r in data["rows"])


@pytest.mark.parametrize("argv", [
    ["ite1d", "--gamma", "1.4142135623730951", "--rmax", "60"],
    ["itend", "--n", "2", "--m", "0.25", "--rmax", "20", "--threads", "3"],
    ["weyl", "--n", "3", "--m", "4", "--rmax", "20", "--format", "json"],
])
def test_determinism(argv, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(argv + ["--out", str(a)]) == 0
    assert cli.main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_json_round_trip(tmp_path):
    path = tmp_path / "r.json"
    cli.main(["itend", "--n", "3", "--m", "2", "--rmax", "15", "--format", "json", "--out", str(path)])
    data = json.loads(path.read_text())
    csv_path = tmp_path / "r.csv"
    cli.main(["itend", "--n", "3", "--m", "2", "--rmax", "15", "--out", str(csv_path)])
    rows = list(csv.DictReader(io.StringIO(csv_path.read_text())))
    assert len(rows) == len(data["rows"])
    for c, j in zip(rows, data["rows"]):
        assert float(c["lambda"]) == j["lambda"]
        assert float(c["nu"]) == j["nu"]
    # re-serialising reproduces the file exactly
    assert json.dumps(data, indent=2) + "\n" == path.read_text()


def test_tol_override_recorded(capsys):
    code, out, _ = run(["ite1d", "--gamma", "2", "--rmax", "4", "--tol", "1e-6", "--format", "json"], capsys)
    assert json.loads(out)["meta"]["tolerances"]["common_zero"] == 1e-6


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "itespec", "ite1d", "--gamma", "3", "--rmax", "5"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == ",".join(cli.EIGEN_COLUMNS)
