"""Restriction to A(X, 𝒟) when 𝒟 contains every boundary divisor off the
linear part of the valuation cone.

The generic fiber is a smooth complete toric variety whose fan is the part of
the boundary fan inside V^ℓ = Σ^⊥.  Its lattice N^ℓ is taken with its
Hermite basis b_1..b_m; characters restrict to it by ``r(γ) = (<b_i, γ>)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .cone import Cone, HalfspaceCone, NotStrictlyConvex, double_description, intersect_subspace
from .demazure import RootData, demazure_roots, neg, phi, positive_system, simple_roots, is_positive
from .exact_linalg import Sublattice, Vector, annihilator, dot, vec_mat
from .fan import Fan, covers_region, is_complete, is_smooth
from .lattice_points import Unbounded, lattice_points
from .spherical import PreconditionError, SphericalData, classify_boundary
from .toric_levi import ColoredCone, ColoredFan, LeviInvariants, cone_colors, levi_invariants


class FiberNotComplete(ValueError):
    """The cones inside V^ℓ do not cover N^ℓ."""


class UnboundedSearch(ValueError):
    """The root search region has a recession direction."""


def ell_lattice(sd: SphericalData) -> Sublattice:
    """N^ℓ = N ∩ V^ℓ."""
    if sd.sigma is not None:
        return annihilator(list(sd.sigma.values()), sd.rank)
    return annihilator(sd.support.inequalities, sd.rank)


def restrict_character(nl: Sublattice, gamma: Sequence[int]) -> Vector:
    return tuple(dot(b, gamma) for b in nl.basis)


def fiber_fan(sd: SphericalData) -> Fan:
    """Cones of the boundary fan lying in V^ℓ, in coordinates of N^ℓ."""
    nl = ell_lattice(sd)
    ell, _ = classify_boundary(sd)
    f = sd.fan
    cones = [c for c in f.all_cones if c <= ell]
    rays = {d: nl.coordinates(f.rays[d]) for d in sorted(ell)}
    fib = Fan(nl.rank, rays, tuple(cones))
    if not is_complete(fib):
        raise FiberNotComplete("cones in V^ℓ do not cover N^ℓ")
    if not is_smooth(fib):
        raise PreconditionError("fiber fan is not smooth")
    return fib


def _moved_set(sd: SphericalData, stable: Iterable[str]) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    stable = frozenset(stable)
    unknown = stable - set(sd.fan.rays)
    if unknown:
        raise PreconditionError("unknown ray names %s" % sorted(unknown))
    moved = frozenset(sd.fan.rays) - stable
    ell, _ = classify_boundary(sd)
    if not moved <= ell:
        raise PreconditionError("moved set contains nℓ-divisors %s" % sorted(moved - ell))
    return stable, moved


@dataclass(frozen=True)
class RestrictedRoots:
    """Characters γ of Λ moving one divisor of 𝓔, with their restrictions to N^ℓ."""

    candidates: Tuple[Tuple[Vector, str, Vector], ...]
    R: Tuple[Vector, ...]
    phi: Tuple[Vector, ...]
    violations: Tuple[dict, ...] = ()

    def moved_by(self, alpha: Sequence[int]) -> FrozenSet[str]:
        return frozenset(e for _, e, a in self.candidates if a == tuple(alpha))

    def to_json(self) -> dict:
        return {
            "candidates": [{"gamma": list(g), "moved": e, "restriction": list(a)} for g, e, a in self.candidates],
            "R": [list(a) for a in self.R],
            "phi": [list(a) for a in self.phi],
            "violations": list(self.violations),
        }


def restricted_roots(sd: SphericalData, stable: Iterable[str]) -> RestrictedRoots:
    """R(X, 𝒟) and Φ(X, 𝒟), validated against the opposite-characters lemma."""
    _, moved = _moved_set(sd, stable)
    nl = ell_lattice(sd)
    f = sd.fan
    functionals = dict(f.rays)
    functionals.update(sd.colors)
    cands = []
    for e in sorted(moved):
        ineqs = [(v, 0) for d, v in sorted(functionals.items()) if d != e]
        try:
            pts = lattice_points(ineqs, sd.rank, [(f.rays[e], -1)])
        except Unbounded as exc:
            raise UnboundedSearch("root search for %s is unbounded; more colors or boundary are needed" % e) from exc
        for g in pts:
            cands.append((g, e, restrict_character(nl, g)))
    cands.sort()
    R = tuple(sorted({a for _, _, a in cands}))
    rset = set(R)
    ph = tuple(a for a in R if neg(a) in rset)
    _, nell = classify_boundary(sd)
    others = [f.rays[d] for d in sorted(nell)] + [v for _, v in sorted(sd.colors.items())]
    viol = []
    for g, e, a in cands:
        if a not in ph:
            continue
        bad = [list(v) for v in others if dot(v, g) != 0]
        if bad:
            viol.append({"check": "opposite", "gamma": list(g), "moved": e, "nonvanishing": bad})
    return RestrictedRoots(tuple(cands), R, ph, tuple(viol))


def _fiber_root_data(sd: SphericalData, stable: FrozenSet[str], fib: Fan) -> RootData:
    ell, _ = classify_boundary(sd)
    return phi(demazure_roots(fib), stable & ell, fib.rays)


def phi_containment_check(sd: SphericalData, stable: Iterable[str]) -> dict:
    """Φ(X, 𝒟) ⊆ Φ(fiber, 𝒟'), with moved divisors matching on the fiber."""
    stable, _ = _moved_set(sd, stable)
    rr = restricted_roots(sd, stable)
    fib = fiber_fan(sd)
    frd = _fiber_root_data(sd, stable, fib)
    fiber_phi = set(frd.phi)
    X = frd.moved_ray
    missing = [list(a) for a in rr.phi if a not in fiber_phi]
    mismatch = [
        {"alpha": list(a), "ambient": sorted(rr.moved_by(a)), "fiber": X.get(a)}
        for a in rr.phi if rr.moved_by(a) != frozenset([X.get(a)])
    ]
    return {
        "ok": not missing and not mismatch and not rr.violations,
        "phi": [list(a) for a in rr.phi],
        "fiber_phi": [list(a) for a in frd.phi],
        "strict": set(rr.phi) < fiber_phi,
        "missing": missing,
        "moved_mismatch": mismatch,
        "opposite_violations": list(rr.violations),
    }


@dataclass(frozen=True)
class LinearInvariants:
    lambda_A: Sublattice
    colors_A: Mapping[str, Vector]
    pa_sp: Tuple[str, ...]
    pa_roots: Tuple[Vector, ...]
    fiber: Fan
    fiber_roots: RootData
    fiber_levi: LeviInvariants
    ell: Sublattice
    input_colors: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "colors_A", dict(self.colors_A))

    @property
    def rank(self) -> int:
        return self.lambda_A.rank

    def s(self, v: Sequence) -> tuple:
        return tuple(dot(v, lam) for lam in self.lambda_A.basis)

    def to_json(self) -> dict:
        return {
            "lambda_A": [list(b) for b in self.lambda_A.basis],
            "colors_A": {k: list(v) for k, v in sorted(self.colors_A.items())},
            "pa_simple_roots": {"sp": list(self.pa_sp), "roots": [list(a) for a in self.pa_roots]},
            "phi": [list(a) for a in self.fiber_roots.phi],
            "phi_plus": [list(a) for a in self.fiber_roots.phi_plus],
            "psi": [list(a) for a in self.fiber_roots.psi],
            "fiber_levi": self.fiber_levi.to_json(),
        }


def linear_levi_invariants(sd: SphericalData, stable: Iterable[str],
                           functional: Optional[Sequence[int]] = None) -> LinearInvariants:
    stable, moved = _moved_set(sd, stable)
    rr = restricted_roots(sd, stable)
    fib = fiber_fan(sd)
    frd = _fiber_root_data(sd, stable, fib)
    if not set(rr.phi) <= set(frd.phi):
        raise PreconditionError("Φ(X, 𝒟) is not contained in the fiber root system")
    plus = tuple(sorted(a for a in rr.phi if is_positive(a, functional)))
    # the fiber's own Φ is replaced by the restricted one; X(·) comes from the fiber
    rd = RootData(frd.all_roots, frd.stable, frd.moved_set, rr.phi, plus, simple_roots(plus))
    lev = levi_invariants(fib, rd)
    X = rd.moved_ray
    nl = ell_lattice(sd)
    # r^{-1}(Λ_L): characters killing the ambient functionals ρ(X(α)), α in Ψ
    lam = annihilator([sd.fan.rays[X[a]] for a in rd.psi], sd.rank)

    def s(v):
        return tuple(dot(v, b) for b in lam.basis)

    colors = {d: s(v) for d, v in sd.colors.items()}
    for e in lev.colors_A:
        if e in moved:
            colors[e] = s(sd.fan.rays[e])
    pa_roots = tuple(a for a in rd.psi if X[neg(a)] not in lev.colors_A)
    return LinearInvariants(lam, colors, sd.sp, pa_roots, fib, rd, lev, nl, frozenset(sd.colors))


def linear_colored_fan(sd: SphericalData, stable: Iterable[str], functional: Optional[Sequence[int]] = None,
                       inv: Optional[LinearInvariants] = None) -> ColoredFan:
    if inv is None:
        inv = linear_levi_invariants(sd, stable, functional)
    ell, _ = classify_boundary(sd)
    f = sd.fan
    k = inv.rank
    lev = inv.fiber_levi
    new_colors = [d for d in inv.colors_A if d not in inv.input_colors]
    found: Dict[ColoredCone, None] = {}
    per_source = {}
    for c in f.all_cones:
        c_ell = frozenset(c & ell)
        fib_cone = inv.fiber.cone(c_ell)
        cut = intersect_subspace(fib_cone, lev.psi_perp)
        gens = [inv.s(f.rays[d]) for d in sorted(c - ell)]
        gens += [inv.s(inv.ell.from_coordinates(g)) for g in cut.generators]
        cone = Cone.from_generators(gens, k)
        d_l = cone_colors(c_ell, inv.fiber_roots, list(lev.colors_A))
        cc = ColoredCone(cone, frozenset(d for d in new_colors if d in d_l))
        found.setdefault(cc)
        per_source[c] = cc
    cones = tuple(sorted(found, key=ColoredCone.sort_key))
    index = {cc: i for i, cc in enumerate(cones)}
    return ColoredFan(k, cones, inv.colors_A, {c: index[cc] for c, cc in per_source.items()})


def image_region(sd: SphericalData, lambda_A: Sublattice) -> HalfspaceCone:
    """s(V) as a halfspace cone in N_A."""
    k = lambda_A.rank

    def s(v):
        return tuple(dot(v, b) for b in lambda_A.basis)

    lines, rays = sd.support.generators
    gens = [s(v) for v in rays] + [s(v) for v in lines] + [tuple(-x for x in s(v)) for v in lines]
    gens = [g for g in gens if any(g)]
    dl, dr = double_description(gens, k)
    ineqs = list(dr) + list(dl) + [tuple(-x for x in l) for l in dl]
    return HalfspaceCone(k, tuple(ineqs))


def sigma_preservation_check(sd: SphericalData, cf: ColoredFan, lambda_A: Sublattice) -> bool:
    """The union of the colored cones is s(V)."""
    return covers_region([c.cone for c in cf.cones], cf.rank, image_region(sd, lambda_A))
