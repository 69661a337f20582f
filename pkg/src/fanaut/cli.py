"""Command line interface: ``fan-aut <command> [options] <file>``.

Exit codes: 0 success, 1 invalid data, 2 unreadable or malformed input,
3 a typed error raised by a computation (its name is printed as JSON).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence

from .demazure import (
    BoundTooSmall,
    RootData,
    check_independent,
    check_triple,
    demazure_roots,
    phi,
    positive_system,
)
from .fan import Fan, FanFormatError, is_complete, is_smooth, orbit_closure_poset, validate
from .lattice_points import Unbounded
from .linear_case import (
    FiberNotComplete,
    UnboundedSearch,
    ell_lattice,
    linear_colored_fan,
    linear_levi_invariants,
    phi_containment_check,
    restricted_roots,
    sigma_preservation_check,
)
from .spherical import (
    DecompositionFails,
    NotMovable,
    PreconditionError,
    SphericalData,
    classify_boundary,
    nonlinear_restrict,
    validate_spherical,
    wonderful_closure_lattice,
)
from .toric_levi import (
    a_orbit_poset,
    check_abelian_orthogonality,
    check_color_independence,
    check_colors_in_cones,
    check_empty_color_face,
    check_horospherical,
    colored_fan,
    levi_invariants,
    poset_to_json,
)

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_MODULE = 0, 1, 2, 3

TYPED_ERRORS = (
    Unbounded,
    BoundTooSmall,
    NotMovable,
    DecompositionFails,
    PreconditionError,
    FiberNotComplete,
    UnboundedSearch,
)


class UsageError(Exception):
    pass


class InvalidData(Exception):
    def __init__(self, violations):
        super().__init__("invalid data")
        self.violations = violations


def emit(obj, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def threads() -> int:
    """Worker count from FAN_AUT_THREADS; results never depend on it."""
    raw = os.environ.get("FAN_AUT_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError("FAN_AUT_THREADS must be a positive integer")
    if n < 1:
        raise UsageError("FAN_AUT_THREADS must be a positive integer")
    return n


# ---------------------------------------------------------------------------
# input


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FanFormatError("%s: invalid JSON: %s" % (path, exc)) from exc
    except OSError as exc:
        raise FanFormatError("%s: %s" % (path, exc.strerror or exc)) from exc


def is_spherical(data) -> bool:
    return isinstance(data, dict) and "fan" in data


def load_fan(path: str) -> Fan:
    data = load_json(path)
    if not isinstance(data, dict):
        raise FanFormatError("top-level JSON value must be an object")
    if is_spherical(data):
        sd = SphericalData.from_json(data)
        if sd.sigma:
            raise FanFormatError("toric commands need a fan or spherical data with empty sigma")
        f = Fan(sd.fan.ambient_rank, sd.fan.rays, sd.fan.cones)
    else:
        f = Fan.from_json(data)
    bad = validate(f)
    if bad:
        raise InvalidData(bad)
    return f


def load_spherical(path: str) -> SphericalData:
    data = load_json(path)
    if not is_spherical(data):
        raise FanFormatError("expected spherical data with a 'fan' key")
    sd = SphericalData.from_json(data)
    bad = validate_spherical(sd)
    if bad:
        raise InvalidData(bad)
    return sd


def split_names(raw: str) -> List[str]:
    return [x.strip() for x in raw.split(",") if x.strip()]


def stable_set(args, rays) -> List[str]:
    names = set(rays)
    if args.stable is not None:
        chosen = split_names(args.stable)
    else:
        moved = split_names(args.moved)
        unknown = sorted(set(moved) - names)
        if unknown:
            raise PreconditionError("unknown ray names %s" % unknown)
        chosen = sorted(names - set(moved))
    unknown = sorted(set(chosen) - names)
    if unknown:
        raise PreconditionError("unknown ray names %s" % unknown)
    return sorted(chosen)


def parse_positivity(raw: Optional[str]):
    if raw is None or raw == "lex":
        return None
    if raw.startswith("vector:"):
        try:
            return tuple(int(x) for x in raw[len("vector:"):].split(","))
        except ValueError:
            pass
    raise UsageError("--positivity must be 'lex' or 'vector:<ints>'")


def check_functional(functional, rank: int) -> None:
    if functional is not None and len(functional) != rank:
        raise UsageError("positivity vector must have %d entries" % rank)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    data = load_json(args.path)
    if not isinstance(data, dict):
        raise FanFormatError("top-level JSON value must be an object")
    if is_spherical(data):
        sd = SphericalData.from_json(data)
        bad = validate_spherical(sd)
        f = sd.fan
        kind = "spherical"
    else:
        f = Fan.from_json(data)
        bad = validate(f)
        kind = "fan"
    report = {"kind": kind, "valid": not bad, "violations": [v.to_json() for v in bad]}
    if not bad:
        report["smooth"] = is_smooth(f)
        report["complete"] = is_complete(f)
    emit(report)
    return EXIT_OK if not bad else EXIT_INVALID


def _root_data(f: Fan, args) -> RootData:
    functional = parse_positivity(args.positivity)
    check_functional(functional, f.ambient_rank)
    roots = demazure_roots(f)
    return positive_system(phi(roots, stable_set(args, f.rays), f.rays), functional)


def cmd_demazure(args) -> int:
    f = load_fan(args.path)
    roots = demazure_roots(f)
    emit({"count": len(roots), "roots": [r.to_json() for r in roots]})
    return EXIT_OK


def cmd_phi(args) -> int:
    f = load_fan(args.path)
    rd = _root_data(f, args)
    out = rd.to_json()
    out["checks"] = {"triple": check_triple(rd.all_roots), "independent": check_independent(rd, f)}
    emit(out)
    return EXIT_OK


def _levi_bundle(f: Fan, args):
    rd = _root_data(f, args)
    inv = levi_invariants(f, rd)
    cf = colored_fan(f, rd, inv)
    return rd, inv, cf


def _orbits_json(f: Fan, cf) -> dict:
    poset = a_orbit_poset(cf)
    collapse = [{"cone": sorted(c), "orbit": i} for c, i in sorted(cf.source.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    return {"count": len(poset), "poset": poset_to_json(poset), "collapse": collapse,
            "g_orbits": len(orbit_closure_poset(f))}


def cmd_levi(args) -> int:
    f = load_fan(args.path)
    rd, inv, cf = _levi_bundle(f, args)
    out = inv.to_json()
    out["root_data"] = rd.to_json()
    out["colored_fan"] = cf.to_json()
    out["horospherical"] = check_horospherical(cf)
    out["orbit_poset"] = _orbits_json(f, cf)
    out["checks"] = {
        "triple": check_triple(rd.all_roots),
        "independent": check_independent(rd, f),
        "abelian": check_abelian_orthogonality(f, rd, inv),
        "empty_color_face": check_empty_color_face(f, rd, cf, inv),
        "color_independence": check_color_independence(inv),
        "colors_in_cones": check_colors_in_cones(cf),
    }
    emit(out)
    return EXIT_OK


def cmd_colored_fan(args) -> int:
    f = load_fan(args.path)
    _, _, cf = _levi_bundle(f, args)
    emit(cf.to_json())
    return EXIT_OK


def cmd_orbits(args) -> int:
    f = load_fan(args.path)
    _, _, cf = _levi_bundle(f, args)
    emit(_orbits_json(f, cf))
    return EXIT_OK


def cmd_nonlinear(args) -> int:
    sd = load_spherical(args.path)
    res = nonlinear_restrict(sd, stable_set(args, sd.fan.rays))
    out = res.to_json()
    ell, nell = classify_boundary(sd)
    out["ell"] = sorted(ell)
    out["nonlinear"] = sorted(nell)
    out["wonderful_closure"] = wonderful_closure_lattice(sd).to_json()
    emit(out)
    return EXIT_OK


def cmd_linear(args) -> int:
    sd = load_spherical(args.path)
    stable = stable_set(args, sd.fan.rays)
    functional = parse_positivity(args.positivity)
    check_functional(functional, ell_lattice(sd).rank)
    rr = restricted_roots(sd, stable)
    inv = linear_levi_invariants(sd, stable, functional)
    cf = linear_colored_fan(sd, stable, inv=inv)
    out = inv.to_json()
    out["restricted_roots"] = rr.to_json()
    out["phi_containment"] = phi_containment_check(sd, stable)
    out["colored_fan"] = cf.to_json()
    out["sigma_preserved"] = sigma_preservation_check(sd, cf, inv.lambda_A)
    out["orbit_poset"] = poset_to_json(a_orbit_poset(cf))
    emit(out)
    return EXIT_OK


CORPUS_PACKAGE = "fanaut.data"


def corpus_files() -> List[str]:
    root = resources.files(CORPUS_PACKAGE)
    out = []
    for sub in ("", "golden"):
        d = root.joinpath(sub) if sub else root
        for entry in sorted(d.iterdir(), key=lambda e: e.name):
            if entry.is_file() and entry.name.endswith(".json"):
                out.append((sub + "/" + entry.name) if sub else entry.name)
    return out


def cmd_corpus(args) -> int:
    dest = Path(args.out)
    root = resources.files(CORPUS_PACKAGE)
    written = []
    for rel in corpus_files():
        target = dest / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(root.joinpath(rel).read_bytes())
        written.append(rel)
    emit({"directory": str(dest), "files": written})
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fan-aut", description="Automorphism-group invariants of toric and toroidal spherical embeddings.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check fan or spherical data")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    d = sub.add_parser("demazure-roots", help="list Demazure roots")
    d.add_argument("path")
    d.set_defaults(func=cmd_demazure)

    def with_divisors(name, func, help_text):
        q = sub.add_parser(name, help=help_text)
        q.add_argument("path")
        g = q.add_mutually_exclusive_group(required=True)
        g.add_argument("--stable", help="comma separated names of the stabilized divisors 𝒟")
        g.add_argument("--moved", help="comma separated names of the moved divisors 𝓔")
        q.add_argument("--positivity", default="lex", help="'lex' or 'vector:<ints>'")
        q.set_defaults(func=func)

    with_divisors("phi", cmd_phi, "root system Φ(X, 𝒟) with positive and simple roots")
    with_divisors("levi", cmd_levi, "invariants of X under A(X, 𝒟)")
    with_divisors("colored-fan", cmd_colored_fan, "colored fan of X under A(X, 𝒟)")
    with_divisors("orbits", cmd_orbits, "A-orbits and their closure order")
    with_divisors("nonlinear", cmd_nonlinear, "restriction when 𝒟 contains the ℓ-divisors")
    with_divisors("linear", cmd_linear, "restriction when 𝒟 contains the nℓ-divisors")

    c = sub.add_parser("corpus", help="write the bundled example files")
    c.add_argument("--out", default="corpus")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        threads()
        return args.func(args)
    except InvalidData as exc:
        emit({"error": "InvalidData", "violations": [v.to_json() for v in exc.violations]})
        return EXIT_INVALID
    except (FanFormatError, UsageError) as exc:
        emit({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        return EXIT_PARSE
    except TYPED_ERRORS as exc:
        emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_MODULE


if __name__ == "__main__":
    sys.exit(main())
