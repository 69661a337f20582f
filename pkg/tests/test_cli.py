import contextlib
import io
import json
import os
import subprocess
import sys
from importlib import resources

import pytest

from fanaut import cli

DATA = resources.files("fanaut.data")


def data(name):
    return str(DATA.joinpath(name))


def golden(name):
    return json.loads(DATA.joinpath("golden", name + ".json").read_text(encoding="utf-8"))


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, _ = run(argv)
    return code, json.loads(out) if out else None


def test_validate_ok():
    code, rep = run_json(["validate", data("p2.json")])
    assert code == 0 and rep["valid"] and rep["smooth"] and rep["complete"]


def test_validate_overlap():
    code, rep = run_json(["validate", data("overlapping.json")])
    assert code == 1 and not rep["valid"]
    assert rep["violations"][0]["kind"] == "overlap"
    assert rep["violations"][0]["witness"] == [2, 1]


def test_malformed_and_missing(tmp_path):
    code, _, err = run(["validate", data("malformed.json")])
    assert code == 2 and json.loads(err)["error"] == "FanFormatError"
    assert run(["validate", str(tmp_path / "nope.json")])[0] == 2
    assert run(["levi", data("p2.json")])[0] == 2  # neither --stable nor --moved
    assert run(["levi", data("p2.json"), "--stable", "X3", "--moved", "X1"])[0] == 2
    assert run(["levi", data("p2.json"), "--stable", "X3", "--positivity", "vector:1"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_typed_errors(tmp_path):
    code, rep = run_json(["levi", data("p2.json"), "--stable", "Q"])
    assert code == 3 and rep["error"] == "PreconditionError"
    code, rep = run_json(["nonlinear", data("synthetic.json"), "--stable", "E1,D2"])
    assert code == 3 and rep["error"] == "PreconditionError"
    code, rep = run_json(["linear", data("synthetic.json"), "--stable", "E1"])
    assert code == 3 and rep["error"] == "UnboundedSearch"
    cone = tmp_path / "cone.json"
    cone.write_text(json.dumps({"rank": 2, "rays": {"A": [1, 0], "B": [0, 1]}, "cones": [["A", "B"]]}))
    code, rep = run_json(["demazure-roots", str(cone)])
    assert code == 3 and rep["error"] == "Unbounded"


def test_demazure_counts():
    for name, n in [("p1", 2), ("p2", 6), ("p1xp1", 4), ("f1", 4), ("p3", 12)]:
        code, rep = run_json(["demazure-roots", data(name + ".json")])
        assert code == 0 and rep["count"] == n


def test_moved_equals_stable_complement():
    a = run(["levi", data("p2.json"), "--stable", "X3"])
    b = run(["levi", data("p2.json"), "--moved", "X1,X2"])
    assert a == b


GOLDEN_RUNS = {
    "levi_p2_X3": ["levi", "p2.json", "--stable", "X3", "--positivity", "vector:-1,0"],
    "orbits_p2_X3": ["orbits", "p2.json", "--stable", "X3", "--positivity", "vector:-1,0"],
    "orbits_p2_all": ["orbits", "p2.json", "--stable", "X1,X2,X3"],
    "nonlinear_synthetic": ["nonlinear", "synthetic.json", "--stable", "D2,D3"],
    "nonlinear_synthetic_rank3": ["nonlinear", "synthetic_rank3.json", "--stable", "D3,D4"],
    "linear_synthetic": ["linear", "synthetic_linear.json", "--stable", "E1"],
    "linear_fiber_p1xp1": ["linear", "fiber_p1xp1.json", "--stable", "E1"],
}
GOLDEN_RUNS.update({"demazure_" + n: ["demazure-roots", n + ".json"]
                    for n in ["p1", "p2", "p3", "p4", "p1xp1", "f0", "f1", "f2", "f3"]})


@pytest.mark.parametrize("key", sorted(GOLDEN_RUNS))
def test_goldens_reproduce(key):
    argv = list(GOLDEN_RUNS[key])
    argv[1] = data(argv[1])
    code, rep = run_json(argv)
    assert code == 0 and rep == golden(key)


def test_levi_golden_values():
    g = golden("levi_p2_X3")
    assert g["lambda_A"] == [[0, 1]]
    assert g["colors_A"] == {"X2": [1]}
    assert g["pa_simple_roots"] == []
    assert sorted(g["root_data"]["phi"]) == [[-1, 1], [1, -1]]
    assert all(v == [] for v in g["checks"].values())


def test_nonlinear_golden_values():
    g = golden("nonlinear_synthetic")
    assert g["lambda_A"] == [[0, 1]]
    assert g["sigma_of_moved"] == {"E1": "s1"}
    assert all(g["checks"].values())
    assert g["data"]["fan"]["rays"] == {"D2": [1], "D3": [-1]}


def test_determinism_and_threads(monkeypatch):
    argv = ["levi", data("p3.json"), "--stable", "X4"]
    first = run(argv)
    monkeypatch.setenv("FAN_AUT_THREADS", "4")
    assert run(argv) == first
    monkeypatch.setenv("FAN_AUT_THREADS", "zero")
    assert run(argv)[0] == 2


def test_corpus(tmp_path):
    code, rep = run_json(["corpus", "--out", str(tmp_path)])
    assert code == 0
    for name in ["p1", "p2", "p3", "p1xp1", "f0", "f1", "f2", "f3", "synthetic"]:
        assert (tmp_path / (name + ".json")).is_file()
    assert (tmp_path / "golden" / "levi_p2_X3.json").is_file()
    assert len(rep["files"]) == len(list(tmp_path.rglob("*.json")))


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fanaut.cli", "demazure-roots", data("p1.json")],
                          capture_output=True, text=True, env=dict(os.environ))
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 2
