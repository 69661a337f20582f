"""Regenerate the bundled example corpus and its golden outputs.

Inputs come from fanaut.examples; golden files are the CLI output at the
time of generation and are reviewed against hand-derived values in the tests.
"""

import contextlib
import io
import json
import sys
from pathlib import Path

from fanaut import cli
from fanaut.examples import corpus_fans, corpus_spherical

DATA = Path(__file__).resolve().parent.parent / "src" / "fanaut" / "data"

GOLDEN = [
    ("demazure_{name}", ["demazure-roots", "{name}.json"]),
]
EXTRA = {
    "levi_p2_X3": ["levi", "p2.json", "--stable", "X3", "--positivity", "vector:-1,0"],
    "orbits_p2_X3": ["orbits", "p2.json", "--stable", "X3", "--positivity", "vector:-1,0"],
    "orbits_p2_all": ["orbits", "p2.json", "--stable", "X1,X2,X3"],
    "nonlinear_synthetic": ["nonlinear", "synthetic.json", "--stable", "D2,D3"],
    "nonlinear_synthetic_rank3": ["nonlinear", "synthetic_rank3.json", "--stable", "D3,D4"],
    "linear_synthetic": ["linear", "synthetic_linear.json", "--stable", "E1"],
    "linear_fiber_p1xp1": ["linear", "fiber_p1xp1.json", "--stable", "E1"],
}


def dump(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv)
    if code != 0:
        raise SystemExit("command %s failed with %d" % (argv, code))
    return json.loads(buf.getvalue())


def main() -> None:
    (DATA / "golden").mkdir(parents=True, exist_ok=True)
    for name, f in corpus_fans().items():
        dump(DATA / (name + ".json"), f.to_json())
    for name, sd in corpus_spherical().items():
        dump(DATA / (name + ".json"), sd.to_json())
    dump(DATA / "overlapping.json", {
        "rank": 2,
        "rays": {"A": [1, 0], "B": [0, 1], "C": [1, 1]},
        "cones": [["A", "B"], ["A", "C"]],
    })
    (DATA / "malformed.json").write_text('{"rank": 2, "rays": {"A": [1, 0]', encoding="utf-8")
    for name in corpus_fans():
        dump(DATA / "golden" / ("demazure_%s.json" % name), run(["demazure-roots", str(DATA / (name + ".json"))]))
    for key, argv in EXTRA.items():
        argv = list(argv)
        argv[1] = str(DATA / argv[1])
        dump(DATA / "golden" / (key + ".json"), run(argv))


if __name__ == "__main__":
    sys.exit(main())
