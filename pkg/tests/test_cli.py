import hashlib
import json
import subprocess
import sys
from pathlib import Path

import pytest

from gmacdonald.cli import atomic_write, main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def cache(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("GMACDONALD_CACHE_DIR", str(d))
    return d


def run(*argv):
    return main([str(a) for a in argv])


def sha(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def test_compute_rank_two_degree_one_vectors(cache, tmp_path):
    out = tmp_path / "gmp_r2_d2.json"
    assert run("compute", "--rank", 2, "--degree", 2, "--weights", "symbolic", "--out", out) == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == "v1" and doc["rank"] == 2 and doc["order"] == "partial-sum-lex-v1"
    entry = next(e for e in doc["entries"] if e["lambda"] == [[], [1]])
    assert [x["mu"] for x in entry["expansion"]] == [[[], [1]], [[1], []]]


def test_compute_single_element(cache, capsys):
    from gmacdonald.symfunc import SymFunc, macdonald_P
    assert run("compute", "--rank", 1, "--degree", 3, "--lambda", "2,1") == 0
    doc = json.loads(capsys.readouterr().out)
    assert SymFunc.from_json(doc["expansion"]) == macdonald_P([2, 1], 3)


def test_compute_trivial_basis(cache, capsys):
    assert run("compute", "--rank", 2, "--degree", 0) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [e["lambda"] for e in doc["entries"]] == [[[], []]]


def test_cache_hit_is_byte_identical(cache, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("compute", "--rank", 2, "--degree", 2, "--out", a) == 0
    assert "cache store" in capsys.readouterr().err
    assert run("compute", "--rank", 2, "--degree", 2, "--out", b) == 0
    assert "cache hit" in capsys.readouterr().err
    assert sha(a) == sha(b)


def test_golden_outputs(cache, tmp_path):
    out = tmp_path / "c.json"
    assert run("compute", "--rank", 1, "--degree", 2, "--weights", "symbolic", "--no-cache", "--out", out) == 0
    assert out.read_bytes() == (GOLDEN / "compute_r1_d2.json").read_bytes()
    out = tmp_path / "v.json"
    assert run("verify", "bispectral", "--rank", 1, "--degree", 2, "--out", out) == 0
    assert out.read_bytes() == (GOLDEN / "verify_bispectral_r1_d2.json").read_bytes()


def test_verify_exit_codes(cache, tmp_path):
    assert run("verify", "five-term", "--rank", 1, "--degree", 3, "--mode", "exact") == 0
    assert run("verify", "nabla-conjecture", "--rank", 3, "--degree", 3, "--mode", "random", "--seed", 7) == 0
    assert run("verify", "pieri-gmp", "--rank", 2, "--degree", -1) == 2
    out = tmp_path / "m.json"
    assert run("verify", "mutation-psi-sign", "--degree", 2, "--out", out) == 1
    rep = json.loads(out.read_text())
    assert rep["cases"][0]["status"] == "fail" and rep["cases"][0]["counterexample"]["degree"] == 1


def test_error_exit_codes(cache, tmp_path):
    assert run("compute", "--rank", 2, "--degree", 2, "--weights", "1,1") == 3
    assert run("compute", "--rank", 2, "--degree", 2, "--weights", "0.5,1") == 2
    assert run("compute", "--rank", 2, "--degree", 2, "--weights", "1,2,3") == 2
    assert run("verify", "no-such-suite") == 2
    assert run("verify", "five-term", "--rank", 1, "--degree", 3, "--budget", 5) == 4
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run("compute", "--rank", 1, "--degree", 1, "--cache-dir", blocker / "sub") == 5


def test_config_file_and_flag_precedence(cache, tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# sweep\nrank = 2\ndegree = 1\nformat = table\n")
    assert run("compute", "--config", conf) == 0
    assert "coefficient" in capsys.readouterr().out
    assert run("compute", "--config", conf, "--format", "json") == 0
    assert json.loads(capsys.readouterr().out)["rank"] == 2
    conf.write_text("colour = blue\n")
    assert run("compute", "--config", conf) == 2


def test_cache_management(cache, capsys):
    assert run("cache", "list", "--format", "table") == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 1
    run("compute", "--rank", 1, "--degree", 1)
    (cache / ".tmp-stale").write_text("partial")
    (cache / "old.json").write_text(json.dumps({"schema": "v1", "version": "0.0.1"}))
    capsys.readouterr()
    assert run("cache", "gc") == 0
    assert sorted(p.name for p in cache.iterdir()) == [p.name for p in cache.glob("*.json")]
    assert len(list(cache.iterdir())) == 1
    assert run("cache", "clear") == 0
    capsys.readouterr()
    assert run("cache", "list") == 0
    assert json.loads(capsys.readouterr().out)["entries"] == []


def test_atomic_write_leaves_no_partial_file(tmp_path):
    target = tmp_path / "x.json"

    with pytest.raises(TypeError):
        atomic_write(target, 123)
    assert not target.exists()
    assert list(tmp_path.iterdir()) == []
    atomic_write(target, "ok\n")
    assert target.read_text() == "ok\n"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "gmacdonald", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "0.1.0" in out.stdout
