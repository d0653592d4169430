import io
import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from spectral_zeta.cli import run, table_from_json


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_zeta_exact():
    code, out, _ = call("zeta", "--manifold", "S2", "--s", "0")
    assert code == 0
    assert json.loads(out) == {"value": "-2/3", "exact": True}


def test_zeta_numeric():
    code, out, _ = call("zeta", "--manifold", "S2", "--s", "2")
    data = json.loads(out)
    assert code == 0 and data["exact"] is False
    assert float(data["value"]) == pytest.approx(1.0, abs=1e-11)
    assert list(data) == ["value", "error", "exact"]


def test_zeta_pole_exit():
    code, out, err = call("zeta", "--manifold", "S2", "--s", "1")
    assert code == 2 and out == ""
    assert "pole at s=1" in err


def test_poles_cp2():
    code, out, _ = call("poles", "--manifold", "CP2")
    data = json.loads(out)
    assert code == 0 and data["manifold"] == "CP2"
    assert {p["s"]: p["residue"] for p in data["poles"]} == {"1": "1/2", "2": "1/8"}


def test_poles_depth_and_csv():
    code, out, _ = call("poles", "--manifold", "s3", "--depth", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["s,residue", "3/2,1/2", "1/2,1/4", "-1/2,-1/16"]


def test_coeffs():
    code, out, _ = call("coeffs", "--manifold", "S5")
    assert json.loads(out) == {"manifold": "S5", "kind": "sphere-odd", "k": 5, "values": ["12", "7", "1"]}


@pytest.mark.parametrize("argv", [
    ("zeta", "--manifold", "Q2", "--s", "1"),
    ("zeta", "--manifold", "S2"),
    ("zeta", "--manifold", "S2", "--s", "abc"),
    ("det", "--manifold", "S2", "--tolerance", "1e-20"),
    ("det", "--manifold", "S2", "--tolerance", "0.5"),
    ("frobnicate",),
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == ""
    assert len(err.strip().splitlines()) == 1


def test_domain_error_for_unsupported():
    code, _, err = call("coeffs", "--manifold", "S1")
    assert code == 2 and err


def test_tolerance_not_met(monkeypatch):
    from spectral_zeta import cli
    from spectral_zeta.errors import ToleranceNotMet

    def boom(*args, **kwargs):
        raise ToleranceNotMet("derivative paths disagree")

    monkeypatch.setattr(cli, "zeta_prime_at_zero", boom)
    code, _, err = call("det", "--manifold", "S3")
    assert code == 3 and "tolerance" in err


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv("SPECTRAL_ZETA_TOL", "1e-20")
    assert call("det", "--manifold", "S2")[0] == 1
    monkeypatch.setenv("SPECTRAL_ZETA_TOL", "1e-8")
    assert call("det", "--manifold", "S2")[0] == 0


def test_det():
    code, out, _ = call("det", "--manifold", "S2")
    data = json.loads(out)
    assert list(data) == ["manifold", "zeta_prime0", "log_det", "det", "error"]
    assert float(data["det"]) == pytest.approx(math.exp(1.1616845748018037), rel=1e-10)


def test_table_round_trip_and_determinism():
    code, out, _ = call("table")
    assert code == 0
    rows = table_from_json(json.loads(out))
    assert [r["manifold"].name for r in rows] == ["S2", "RP2", "S3", "RP3", "S4", "RP4", "CP2", "S1", "RP1", "CP1"]
    assert rows[0]["zeta0"] == Fraction(-2, 3)
    assert call("table")[1] == out
    again = json.dumps({"rows": [
        {"manifold": r["manifold"].name, "zeta0": str(r["zeta0"]),
         "zeta_prime0": format(r["zeta_prime0"], ".12g"), "error": format(r["error"], ".12g")}
        for r in rows
    ]}, indent=2) + "\n"
    assert again == out


def test_potential_csv(tmp_path):
    target = tmp_path / "pot.csv"
    code, out, _ = call("potential", "--samples", "5", "--output", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "q,G,log_G,zeta_prime0,err" and len(lines) == 6


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "spectral_zeta.cli", "zeta", "--manifold", "S2", "--s", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == "-2/3"
