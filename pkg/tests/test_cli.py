import json
import os
import subprocess
import sys

import pytest

from ogc import cache


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("OGC_CACHE_DIR", None)
    if env:
        e.update(env)
    p = subprocess.run([sys.executable, "-m", "ogc.cli", *args], capture_output=True, text=True, env=e)
    return p.returncode, p.stdout, p.stderr


def test_present_json_koszul():
    rc, out, _ = run("present", "--k", "4", "--n", "18", "--grading", "koszul", "--format", "json")
    assert rc == 0
    data = json.loads(out)
    assert [g["degree"] for g in data["generators"]] == [21, 29]
    assert [r["degree"] for r in data["relations"]] == [32, 33, 35]


def test_format_before_subcommand():
    rc, out, _ = run("--format", "json", "charrank", "--k", "5", "--n", "10")
    assert rc == 0 and json.loads(out)["charrank"] == 10


def test_output_is_byte_stable():
    a = run("ext", "--k", "4", "--n", "18", "--format", "json")
    b = run("ext", "--k", "4", "--n", "18", "--format", "json")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["ext1_rank"] == 1


def test_text_output():
    rc, out, _ = run("ext", "--k", "4", "--n", "18")
    assert rc == 0 and "Ext^1 rank 1" in out and "w_3^2*w_4^7" in out
    rc, out, _ = run("classes", "--k", "3", "--j", "5")
    assert rc == 0 and out.strip() == "q_5 = 0"


def test_out_file(tmp_path):
    target = tmp_path / "sub" / "k.json"
    rc, out, _ = run("koszul", "--k", "3", "--n", "6", "--format", "json", "--out", str(target))
    assert rc == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["q_degrees"] == [4, 5, 6]


@pytest.mark.parametrize("args", [
    ("present", "--k", "5", "--n", "4"),
    ("charrank", "--k", "5", "--n", "12..10"),
    ("tables", "--table", "nope"),
    ("classes", "--k", "4", "--family", "r"),
    ("scan", "--k", "5"),
    ("frobnicate",),
])
def test_usage_errors(args):
    assert run(*args)[0] == 2


def test_cap_too_low_is_diagnostic():
    rc, _, err = run("present", "--k", "4", "--n", "18", "--module", "ker_d1", "--cap", "24")
    assert rc == 3 and "cap" in err


def test_failed_verification_exits_1(tmp_path, monkeypatch):
    from click.testing import CliRunner

    from ogc import cli, reports

    monkeypatch.setattr(reports, "k3_suite", lambda: {"checks": [{"check": "x", "pass": False, "detail": ""}], "pass": False})
    res = CliRunner().invoke(cli.cli, ["verify", "--suite", "k3"])
    assert res.exit_code == 1 and "FAIL  x" in res.output


def test_tables_single(tmp_path):
    rc, out, _ = run("tables", "--table", "k4_K_gens", "--format", "json")
    assert rc == 0
    rep = json.loads(out)
    assert rep["pass"] and rep["tables"][0]["table_id"] == "k4_K_gens"


def test_scan_subset():
    rc, out, _ = run("scan", "--k", "5", "--n", "17..20")
    assert rc == 0 and out.strip().endswith("PASS")


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("OGC_CACHE_DIR", str(tmp_path))
    calls = []

    def compute():
        calls.append(1)
        return [1, 2, 3]

    assert cache.cached("demo", 3, 9, compute) == [1, 2, 3]
    assert cache.cached("demo", 3, 9, compute) == [1, 2, 3]
    assert len(calls) == 1
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and not files[0].name.startswith(".tmp")
    files[0].write_text("{broken")
    assert cache.cached("demo", 3, 9, compute) == [1, 2, 3]
    assert len(calls) == 2


def test_cache_used_by_cli(tmp_path):
    rc, out, _ = run("charrank", "--k", "5", "--n", "10..11", env={"OGC_CACHE_DIR": str(tmp_path)})
    assert rc == 0
    assert len([p for p in tmp_path.iterdir() if p.suffix == ".json"]) == 2
    assert run("charrank", "--k", "5", "--n", "10..11", env={"OGC_CACHE_DIR": str(tmp_path)})[1] == out
