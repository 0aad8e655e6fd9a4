import csv
import io
import json
import subprocess
import sys

import pytest

from skewmum.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_table_ix(capsys):
    code, out, _ = call(capsys, "bounds", "--N", "6", "--d", "2", "--kappa", "1", "--criterion", "kprod", "--all-k")
    assert code == 0
    assert out.splitlines()[-1].split("|")[1].split() == ["9", "12", "15", "16", "19"]


def test_bounds_json(capsys):
    code, out, _ = call(capsys, "bounds", "--N", "6", "--kappa", "1", "--criterion", "kprod", "--all-k",
                        "--format", "json")
    doc = json.loads(out)
    assert [b["bound"] for b in doc["result"]["bounds"]] == [9, 12, 15, 16, 19]
    assert doc["parameters"]["kappa"] == 1 and doc["parameters"]["d"] == 2


def test_detect_example37c(capsys):
    code, out, _ = call(capsys, "detect", "--state", "example37:c", "--s", "-inf", "--k", "3",
                        "--criterion", "kprod", "--format", "json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["violated"] is True
    assert res["lhs"] == pytest.approx(16, abs=1e-9) and res["bound"] == 15


def test_detect_maximally_mixed(capsys):
    code, out, _ = call(capsys, "detect", "--state", "ghz:4", "--noise", "0", "--s", "0", "--k", "2",
                        "--criterion", "ksep", "--format", "json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["violated"] is False and res["lhs"] == pytest.approx(0, abs=1e-12)


def test_detect_large_uses_structured_path(capsys):
    code, out, _ = call(capsys, "detect", "--state", "ghz:11", "--noise", "0.5", "--s", "-inf", "--k", "11",
                        "--criterion", "ksep", "--format", "json")
    res = json.loads(out)["result"]
    assert res["path"] == "isotropic" and res["lhs"] == pytest.approx(35.75)


def test_depth(capsys):
    code, out, _ = call(capsys, "depth", "--state", "example37:b", "--s", "-1")
    assert code == 0 and "certified depth: 3" in out


def test_threshold(capsys):
    code, out, _ = call(capsys, "threshold", "--state", "ghz:11", "--s", "-inf", "--criterion", "ksep",
                        "--k", "11", "--tol", "1e-10", "--format", "json")
    res = json.loads(out)["result"]
    assert res["status"] == "solved" and res["p_star"] == pytest.approx(16.5 / 71.5, abs=1e-8)


def test_tables_csv(capsys):
    code, out, _ = call(capsys, "tables", "--which", "all", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert set(rows[0]) == {"table", "k", "computed", "paper", "delta"}
    ix = [r for r in rows if r["table"] == "IX"]
    assert [float(r["delta"]) for r in ix] == [0.0] * 5
    assert {r["table"] for r in rows} == {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"}


def test_tables_text(capsys):
    code, out, _ = call(capsys, "tables", "--which", "ix")
    assert code == 0 and "Table IX" in out


def test_network_demo(capsys):
    code, out, _ = call(capsys, "network-demo", "--format", "json")
    res = json.loads(out)["result"]
    assert res["assignment"] == {"a": "net 2", "b": "net 1", "c": "net 3"}


def test_mum_validate(capsys):
    for d in ("2", "3", "5"):
        code, out, _ = call(capsys, "mum", "validate", "--d", d, "--format", "json")
        res = json.loads(out)["result"]
        assert code == 0 and res["ok"]
        assert max(res["residuals"].values()) <= 1e-10


def test_mum_export(tmp_path, capsys):
    path = tmp_path / "mum.json"
    code, _, _ = call(capsys, "mum", "export", "--d", "2", "--kappa", "1", "--output", str(path))
    doc = json.loads(path.read_text())
    assert code == 0 and doc["d"] == 2 and len(doc["effects"]) == 3


def test_output_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    call(capsys, "network-demo", "--format", "json", "--output", str(path))
    assert json.loads(path.read_text())["report"] == "network-demo"


@pytest.mark.parametrize("argv", [
    ["bounds", "--N", "6", "--criterion", "ksep", "--k", "1"],
    ["bounds", "--N", "6", "--criterion", "ksep", "--k", "2", "--kappa", "1", "--t", "0.1"],
    ["detect", "--state", "nope:3", "--s", "0", "--k", "2", "--criterion", "ksep"],
    ["detect", "--state", "ghz:3", "--s", "0.5", "--k", "2", "--criterion", "ksep"],
    ["mum", "validate", "--d", "3", "--t", "5"],
])
def test_argument_errors_exit_2(capsys, argv):
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse-level errors
        code = exc.code
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_numerical_failure_exit_1(capsys, monkeypatch):
    import skewmum.cli as cli
    from skewmum.thresholds import MonotonicityError
    import numpy as np

    def boom(*a, **k):
        raise MonotonicityError(np.linspace(0, 1, 3), np.array([0.0, -1.0, 2.0]))

    monkeypatch.setattr(cli, "threshold_solve", boom)
    code = run(["threshold", "--state", "w:6", "--s", "0", "--criterion", "ksep", "--k", "3"])
    assert code == 1
    assert "numerical check failed" in capsys.readouterr().err


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "skewmum", *argv], capture_output=True, text=True)


def test_subprocess_exit_codes():
    assert _cli("bounds", "--N", "6", "--criterion", "kprod", "--all-k").returncode == 0
    bad = _cli("bounds", "--N")
    assert bad.returncode == 2 and "usage" in bad.stderr


def test_json_byte_identical():
    argv = ("detect", "--state", "example37:a", "--noise", "0.8", "--s", "-1", "--k", "2",
            "--criterion", "kprod", "--format", "json")
    a, b = _cli(*argv), _cli(*argv)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_json_metadata(capsys):
    _, out, _ = call(capsys, "detect", "--state", "w:4", "--s", "-0.5", "--k", "2", "--criterion", "ksep",
                     "--format", "json")
    doc = json.loads(out)
    assert doc["version"] == "0.1.0"
    assert set(doc["parameters"]) == {"d", "N", "t", "kappa", "s"}
    assert doc["parameters"]["s"] == "-0.5" and doc["parameters"]["N"] == 4
    assert "summation" in doc["conventions"]
