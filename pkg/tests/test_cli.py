import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from taucalc.cli import resolve_cache_path, run

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "tau_1_02.txt": ["tau", "-g", "1", "-d", "0,2"],
    "tau_0_000.txt": ["tau", "-g", "0", "-d", "0,0,0"],
    "tau_2_32.json": ["--format", "json", "tau", "-g", "2", "-d", "3,2"],
    "tau_2_4.csv": ["tau", "-g", "2", "-d", "4", "--format", "csv"],
    "npoint_1_2.txt": ["npoint", "-g", "1", "-n", "2"],
    "npoint_2_2_norm.json": ["npoint", "-g", "2", "-n", "2", "--normalized", "--format", "json"],
    "lcoeff.txt": ["lcoeff", "-g", "0", "-a", "3", "-b", "0", "-k=-1", "-d", "1"],
    "lgen.json": ["lgen", "-g", "1", "-k=-1", "-r", "0,0", "-d", "3", "--format", "json"],
    "kdv_r3.txt": ["kdv", "rn", "-n", "3"],
    "verify_zagier.txt": ["verify", "zagier", "--max-genus", "10"],
    "verify_cor46.json": ["verify", "cor46", "--max-genus", "3", "--max-points", "2", "--format", "json"],
}


def call(argv, env_cache=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("TAUCALC_CACHE", raising=False)


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    code, out, err = call(GOLDEN_CASES[name])
    assert code == 0, err
    assert out == (GOLDEN / name).read_text()


def test_output_deterministic():
    argv = ["npoint", "-g", "2", "-n", "3", "--format", "json"]
    assert call(argv)[1] == call(argv)[1]


def test_tau_json_schema():
    code, out, _ = call(["tau", "-g", "1", "-d", "1,1", "--format", "json"])
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"g", "d", "value"}
    assert isinstance(data["g"], int) and all(isinstance(x, int) for x in data["d"])
    assert data["value"] == "1/24"


def test_extended_values():
    assert call(["tau", "-g", "0", "-d=3,-4", "--extended"])[1] == "-1\n"
    code, _, err = call(["tau", "-g", "0", "-d=-2"])
    assert code == 2 and "extended" in err


def test_usage_and_domain_errors():
    code, out, err = call(["tau", "-g", "1"])
    assert code == 2 and out == "" and "usage" in err
    code, _, err = call(["tau", "-g", "0", "-d", "0"])
    assert code == 2 and "stable range" in err
    code, _, err = call(["tau", "-g", "1", "-d", "a,b"])
    assert code == 2
    code, _, err = call(["kdv", "rn", "-n", "9"])
    assert code == 2
    code, _, _ = call(["verify", "nonsense"])
    assert code == 2


def test_verify_exit_codes():
    assert call(["verify", "faber", "--max-genus", "2", "--max-points", "2"])[0] == 0
    code, out, _ = call(["verify", "faber", "--max-genus", "1", "--max-points", "4", "--format", "json"])
    data = json.loads(out)
    assert code == 1 and data["status"] == "fail" and data["failures"]


def test_table_csv_and_cache(tmp_path):
    out_path = tmp_path / "t.jsonl"
    code, out, _ = call(["table", "--max-genus", "1", "--max-points", "3", "--out", str(out_path), "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "g,n,d,value"
    assert "1,2,1;1,1/24" in lines
    assert "1,3,3;0;0,1/24" in lines
    assert out_path.exists()
    code, out, _ = call(["cache", "check", str(out_path)])
    assert code == 0 and "records ok" in out


def test_cache_precedence(tmp_path, monkeypatch):
    assert resolve_cache_path(None, {}) == Path("taucalc-cache.jsonl")
    assert resolve_cache_path(None, {"TAUCALC_CACHE": "env.jsonl"}) == Path("env.jsonl")
    assert resolve_cache_path("flag.jsonl", {"TAUCALC_CACHE": "env.jsonl"}) == Path("flag.jsonl")


def test_cache_values_used(tmp_path, monkeypatch):
    # a hand-edited (still positive, on-shell) cache value is what tau reports
    path = tmp_path / "c.jsonl"
    path.write_text('{"format":"taucalc-cache","version":1}\n{"g":2,"d":[4],"v":"7"}\n')
    monkeypatch.setenv("TAUCALC_CACHE", str(path))
    assert call(["tau", "-g", "2", "-d", "4"])[1] == "7\n"
    assert call(["--cache", "missing.jsonl", "tau", "-g", "2", "-d", "4"])[1] == "1/1152\n"


def test_corrupt_cache_is_error(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text('{"format":"taucalc-cache","version":1}\n{"g":2,"d":[4],"v":"-1/1152"}\n')
    code, _, err = call(["--cache", str(path), "tau", "-g", "2", "-d", "4"])
    assert code == 2 and "line 2" in err and "positivity" in err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "taucalc.cli", "tau", "-g", "2", "-d", "4"],
        capture_output=True, text=True, env={**os.environ, "TAUCALC_CACHE": "absent.jsonl"},
    )
    assert proc.returncode == 0 and proc.stdout == "1/1152\n"
