import json
import os
import subprocess
import sys
import time

import pytest

from trimodel import addcat as ac
from trimodel import meshcat as mc
from trimodel.exactlin import PrimeField
from trimodel.report import mor_to_json


def run_cli(*args, env=None):
    cmd = [sys.executable, "-m", "trimodel.cli", *args]
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(cmd, capture_output=True, env=full_env)


def test_gen_a2_json():
    r = run_cli("gen", "--type", "A", "--rank", "2", "--report", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    w = data["checks"][0]["witnesses"]
    assert len(w["vertices"]) == 5
    assert w["total_hom_dim"] == 10
    assert sum(sum(row) for row in w["hom_dims"]) == 10


def test_gen_save_round_trip(tmp_path):
    path = tmp_path / "pentagon.json"
    r = run_cli("gen", "--type", "A", "--rank", "2", "--save", str(path))
    assert r.returncode == 0
    cat = mc.load(path)
    assert cat.total_hom_dim() == 10


def test_exit_code_2_on_bad_input():
    assert run_cli("gen", "--type", "A").returncode == 2
    assert run_cli("axioms", "--type", "A", "--rank", "2",
                   "--T", "junk").returncode == 2
    assert run_cli("gen", "--type", "A", "--rank", "2",
                   "--field-char", "4").returncode == 2
    assert run_cli("classify", "--type", "A", "--rank", "2", "--T", "13",
                   "--mor", "/does/not/exist.json").returncode == 2


def test_unknown_flag_exits_2():
    assert run_cli("gen", "--nope").returncode == 2


def test_axioms_command():
    r = run_cli("axioms", "--type", "A", "--rank", "2", "--T", "13",
                "--budget", "100")
    assert r.returncode == 0


def test_lemmas_command():
    r = run_cli("lemmas", "--type", "A", "--rank", "2", "--T", "13")
    assert r.returncode == 0


def test_equivalence_command():
    r = run_cli("equivalence", "--type", "A", "--rank", "2", "--T", "13",
                "--report", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert all(c["status"] == "pass" for c in data["checks"])


def test_list_ts_command():
    r = run_cli("list-ts", "--type", "A", "--rank", "2", "--T", "13",
                "--report", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    w = data["checks"][0]["witnesses"]
    assert w["indecomposables"] == ["13", "25"]


def test_example_d4_default_char_3():
    t0 = time.time()
    r = run_cli("example-d4", "--report", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["config"]["field_char"] == 3
    assert time.time() - t0 < 30


def test_example_d4_explicit_char():
    r = run_cli("example-d4", "--field-char", "3")
    assert r.returncode == 0


def test_classify_round_trip(tmp_path):
    cat = mc.build_type_a(2, PrimeField(2))
    f = ac.elementary(cat, ac.obj("13"), ac.obj("14"), 0, 0, 0)
    path = tmp_path / "mor.json"
    with open(path, "w") as fh:
        json.dump(mor_to_json(f), fh)
    r = run_cli("classify", "--type", "A", "--rank", "2", "--T", "13",
                "--mor", str(path), "--report", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    flags = data["checks"][0]["witnesses"]["flags"]
    assert flags == {"weq": True, "fib": True, "wfib": True, "wcof": False}


def test_classify_malformed_morphism(tmp_path):
    path = tmp_path / "bad.json"
    with open(path, "w") as fh:
        json.dump({"dom": ["13"], "cod": ["14"], "blocks": [[[1, 2]]]}, fh)
    r = run_cli("classify", "--type", "A", "--rank", "2", "--T", "13",
                "--mor", str(path))
    assert r.returncode == 2
    assert b"blocks" in r.stderr


def test_byte_determinism():
    args = ("axioms", "--type", "A", "--rank", "2", "--T", "13",
            "--budget", "80", "--report", "json")
    assert run_cli(*args).stdout == run_cli(*args).stdout


def test_out_flag(tmp_path):
    path = tmp_path / "report.json"
    r = run_cli("gen", "--type", "A", "--rank", "2", "--report", "json",
                "--out", str(path))
    assert r.returncode == 0
    assert json.loads(path.read_text())["command"] == "gen"


def test_budget_env_override():
    r = run_cli("axioms", "--type", "A", "--rank", "2", "--T", "13",
                env={"TRIMODEL_BUDGET": "60"})
    assert r.returncode == 0


def test_dynkin_quiver_file(tmp_path):
    path = tmp_path / "a2.json"
    with open(path, "w") as fh:
        json.dump({"vertices": ["1", "2"], "arrows": [["1", "2"]]}, fh)
    r = run_cli("gen", "--type", "dynkin", "--quiver", str(path),
                "--report", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["checks"][0]["witnesses"]["total_hom_dim"] == 10


def test_gen_d4_paper():
    r = run_cli("gen", "--type", "d4-paper", "--report", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert len(data["checks"][0]["witnesses"]["vertices"]) == 16


def test_empty_report_summary():
    from trimodel.report import Report
    assert Report("x", {}).summary == "0 checks"
