import json
import subprocess
import sys

import pytest

from ircgap.cli import main

REF_FLAGS = ["--s11", "20", "--s12", "8", "--s13", "20", "--s21", "8",
              "--s22", "20", "--s23", "20", "--s31", "10"]
ZERO_FLAGS = [f"--{k}=-inf" for k in ("s11", "s12", "s13", "s21", "s22", "s23", "s31")]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_region_outer_lists_twenty_bounds(capsys):
    code, out, _ = run(capsys, "region", "--bound", "outer-cor1", *REF_FLAGS)
    d = json.loads(out)
    assert code == 0
    assert [b["name"] for b in d["bounds"]] == list("abcdefghijklmnopqrst")
    assert d["vertices"]


def test_region_hk_zero_snr_is_origin(capsys):
    code, out, _ = run(capsys, "region", "--bound", "hk", *ZERO_FLAGS)
    assert code == 0 and json.loads(out)["vertices"] == [[0.0, 0.0]]


@pytest.mark.parametrize("bound", ["outer-thm1", "df-full", "df-partial", "cf", "hk"])
def test_region_deterministic(capsys, bound):
    a = run(capsys, "region", "--bound", bound, *REF_FLAGS)
    b = run(capsys, "region", "--bound", bound, *REF_FLAGS)
    assert a == b and a[0] == 0


def test_region_thm1_rho(capsys):
    code, out, _ = run(capsys, "region", "--bound", "outer-thm1", "--rho", "0.3", *REF_FLAGS)
    assert code == 0 and json.loads(out)["rho"] == 0.3
    assert run(capsys, "region", "--bound", "outer-thm1", "--rho", "1.5", *REF_FLAGS)[0] == 1


def test_region_cf_components(capsys):
    _, out, _ = run(capsys, "region", "--bound", "cf", *REF_FLAGS)
    assert set(json.loads(out)["components"]) == {"cf0", "cf1", "cf2"}


@pytest.mark.parametrize("argv", [
    ["region", "--bound", "outer-cor1"],
    ["region", "--bound", "nope", *REF_FLAGS],
    ["region", "--bound", "hk", "--s11", "abc", *REF_FLAGS[2:]],
    ["sweep", "--step-db", "0"],
    ["sweep", "--lo-db", "5", "--hi-db", "0"],
    ["fme-check", "nope"],
    ["gap-audit", "--regime", "Cf", "--samples", "0"],
    ["region", "--bound", "cf", "--cf-noise", "0", *REF_FLAGS],
    [],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as e:
        sys.exit(main(argv))
    assert e.value.code == 1


def test_sweep_csv(capsys, tmp_path):
    path = tmp_path / "s.csv"
    code, out, _ = run(capsys, "sweep", "--lo-db", "24", "--hi-db", "25", "--out", str(path))
    lines = path.read_text().splitlines()
    assert code == 0 and out == ""
    assert lines[0] == "s31_db,outer,df,cf,hk,gap_df,gap_cf"
    assert [l.split(",")[0] for l in lines[1:]] == ["24.000000", "24.500000", "25.000000"]
    assert all(len(x.split(".")[1]) == 6 for x in lines[-1].split(","))
    assert float(lines[-1].split(",")[5]) <= 1.0


def test_sweep_weak_relay_row(capsys):
    _, out, _ = run(capsys, "sweep", "--lo-db", "-13", "--hi-db", "-12.5")
    row = dict(zip(out.splitlines()[0].split(","), map(float, out.splitlines()[1].split(","))))
    assert row["s31_db"] == -13.0
    assert abs(row["cf"] - row["hk"]) <= 1e-2


def test_gap_audit_deterministic(capsys):
    argv = ["gap-audit", "--regime", "HkNoRelay", "--samples", "1", "--seed", "9"]
    a, b = run(capsys, *argv), run(capsys, *argv)
    assert a == b and a[0] == 0
    assert json.loads(a[1])["samples"] == 1


def test_gap_audit_limit_exit_code(capsys):
    argv = ["gap-audit", "--regime", "Cf", "--samples", "5", "--seed", "1"]
    code, out, _ = run(capsys, *argv, "--max-gap", "0")
    assert code == 2 and json.loads(out)["within_limit"] is False
    assert run(capsys, *argv, "--max-gap", "100")[0] == 0


def test_gap_audit_empty_regime(capsys):
    code, out, _ = run(capsys, "gap-audit", "--regime", "HkNoRelay", "--samples", "1",
                       "--snr-lo-db", "30", "--snr-hi-db", "40")
    assert code == 2 and "error" in json.loads(out)


@pytest.mark.parametrize("name", ["df-full", "df-partial", "cf-joint", "cf-single-k"])
def test_fme_check(capsys, name):
    code, out, _ = run(capsys, "fme-check", name)
    assert code == 0
    assert out.splitlines()[1] == "status: OK"
    assert "missing (0):" in out


def test_fme_check_json(capsys):
    code, out, _ = run(capsys, "fme-check", "df-full", "--json")
    d = json.loads(out)
    assert code == 0 and d["ok"] and len(d["extra_in_derived"]) == 3


def test_decorr_check(capsys):
    code, out, _ = run(capsys, "decorr-check")
    d = json.loads(out)
    assert code == 0 and d["ok"] and 1.0 <= d["sup_ratio"] <= 2.001


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "ircgap", "fme-check", "cf-joint"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "status: OK" in r.stdout
