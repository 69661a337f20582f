"""Toroidal spherical embedding data and the restriction to A(X, 𝒟) when 𝒟
contains every boundary divisor of the linear part.

Conventions: Λ = Z^r holds characters (spherical roots live here), N = Z^r
holds functionals (rays, colors).  The valuation cone is
V = {v : <v, -σ> >= 0 for σ in Σ}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .cone import HalfspaceCone, intersect_subspace, is_face_of
from .exact_linalg import (
    Sublattice,
    Vector,
    annihilator,
    coordinates,
    det,
    dot,
    is_direct_sum,
    rank,
    smith_normal_form,
)
from .fan import Fan, FanFormatError, Violation, is_complete, is_join, is_smooth, restrict_to_subspace, validate


class NotMovable(ValueError):
    """A boundary divisor cannot be left unstabilized."""

    def __init__(self, name: str, reason: str):
        super().__init__("%s: %s" % (name, reason))
        self.name = name


class DecompositionFails(ValueError):
    """ρ(𝓔)^⊥ and the span of the σ_E do not form a direct sum."""


class PreconditionError(ValueError):
    """An operation was called outside its hypotheses."""


def _int_vector(x, n: int, what: str) -> Vector:
    if not isinstance(x, list) or len(x) != n or not all(isinstance(c, int) and not isinstance(c, bool) for c in x):
        raise FanFormatError("%s must be a list of %d integers" % (what, n))
    return tuple(x)


@dataclass(frozen=True)
class SphericalData:
    """Abstract invariants (Λ, Σ, colors, S^p, boundary fan) of a toroidal embedding.

    ``sigma`` is None when the spherical roots are not known; the fan then
    carries its support explicitly.
    """

    rank: int
    sigma: Optional[Mapping[str, Vector]]
    colors: Mapping[str, Vector]
    sp: Tuple[str, ...]
    fan: Fan

    def __post_init__(self):
        if self.sigma is not None:
            object.__setattr__(self, "sigma", dict(self.sigma))
        object.__setattr__(self, "colors", dict(self.colors))
        object.__setattr__(self, "sp", tuple(sorted(self.sp)))

    @staticmethod
    def valuation_cone(rank: int, sigma: Mapping[str, Vector]) -> HalfspaceCone:
        return HalfspaceCone(rank, tuple(tuple(-x for x in s) for _, s in sorted(sigma.items())))

    @classmethod
    def build(cls, rank: int, sigma: Mapping[str, Sequence[int]], colors: Mapping[str, Sequence[int]],
              rays: Mapping[str, Sequence[int]], cones: Iterable[Iterable[str]], sp: Iterable[str] = ()) -> "SphericalData":
        sigma = {k: tuple(v) for k, v in sigma.items()}
        fan = Fan(rank, {k: tuple(v) for k, v in rays.items()}, tuple(frozenset(c) for c in cones),
                  cls.valuation_cone(rank, sigma))
        return cls(rank, sigma, {k: tuple(v) for k, v in colors.items()}, tuple(sp), fan)

    @classmethod
    def from_json(cls, data: dict) -> "SphericalData":
        try:
            r = data["rank"]
            if not isinstance(r, int) or isinstance(r, bool) or r < 0:
                raise FanFormatError("rank must be a non-negative integer")
            raw_sigma = data.get("sigma", {})
            sigma = None if raw_sigma is None else {
                str(k): _int_vector(v, r, "sigma %r" % k) for k, v in raw_sigma.items()
            }
            colors = {str(k): _int_vector(v, r, "color %r" % k) for k, v in data.get("colors", {}).items()}
            sp = data.get("sp", [])
            if not isinstance(sp, list) or not all(isinstance(x, str) for x in sp):
                raise FanFormatError("sp must be a list of labels")
            fan_data = dict(data["fan"])
            fan_data.setdefault("rank", r)
            if fan_data["rank"] != r:
                raise FanFormatError("fan rank differs from lattice rank")
            fan = Fan.from_json(fan_data)
        except (KeyError, TypeError, AttributeError) as exc:
            raise FanFormatError("malformed spherical data: %s" % exc) from exc
        if sigma is not None:
            fan = Fan(fan.ambient_rank, fan.rays, fan.cones, cls.valuation_cone(r, sigma))
        elif fan.support is None:
            raise FanFormatError("unknown sigma requires an explicit fan support")
        return cls(r, sigma, colors, tuple(sp), fan)

    def to_json(self) -> dict:
        fan = self.fan.to_json()
        fan.pop("rank", None)
        return {
            "rank": self.rank,
            "sigma": None if self.sigma is None else {k: list(v) for k, v in sorted(self.sigma.items())},
            "colors": {k: list(v) for k, v in sorted(self.colors.items())},
            "sp": list(self.sp),
            "fan": fan,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @property
    def support(self) -> HalfspaceCone:
        if self.fan.support is not None:
            return self.fan.support
        return HalfspaceCone.whole_space(self.rank)

    def rho(self, name: str) -> Vector:
        if name in self.fan.rays:
            return self.fan.rays[name]
        return self.colors[name]


def validate_spherical(sd: SphericalData) -> List[Violation]:
    out = []
    if sd.sigma is not None:
        vecs = list(sd.sigma.values())
        if vecs and rank(vecs) != len(vecs):
            out.append(Violation("sigma_dependent", "spherical roots are linearly dependent"))
    clash = sorted(set(sd.colors) & set(sd.fan.rays))
    if clash:
        out.append(Violation("name_clash", "names used for both colors and rays: %s" % clash))
    out.extend(validate(sd.fan))
    return out


def classify_boundary(sd: SphericalData) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """(ℓ-set, nℓ-set): a ray is ℓ iff it lies in the linear part of the valuation cone."""
    lin = sd.support.inequalities
    ell = frozenset(d for d, v in sd.fan.rays.items() if all(dot(chi, v) == 0 for chi in lin))
    return ell, frozenset(sd.fan.rays) - ell


def sigma_of_moved(sd: SphericalData, moved: Iterable[str]) -> Dict[str, str]:
    """E ↦ name of the unique spherical root pairing negatively with ρ(E), with validation."""
    if sd.sigma is None:
        raise PreconditionError("spherical roots unknown")
    moved = sorted(moved)
    ell, nell = classify_boundary(sd)
    out = {}
    for e in moved:
        if e not in sd.fan.rays:
            raise PreconditionError("unknown ray %r" % e)
        if e in ell:
            raise PreconditionError("%s is an ℓ-divisor" % e)
        v = sd.fan.rays[e]
        neg = [k for k, s in sorted(sd.sigma.items()) if dot(v, s) < 0]
        if len(neg) != 1:
            raise NotMovable(e, "%d spherical roots pair negatively" % len(neg))
        k = neg[0]
        if dot(v, sd.sigma[k]) != -1:
            raise NotMovable(e, "pairing with %s is %d, not -1" % (k, dot(v, sd.sigma[k])))
        others = [j for j, s in sd.sigma.items() if j != k and dot(v, s) != 0]
        if others:
            raise NotMovable(e, "nonzero pairing with %s" % sorted(others))
        bad = sorted(d for d, w in sd.fan.rays.items() if d != e and dot(w, sd.sigma[k]) != 0)
        if bad:
            raise NotMovable(e, "rays %s are not orthogonal to %s" % (bad, k))
        out[e] = k
    return out


@dataclass(frozen=True)
class Decomposition:
    rho_perp: Sublattice
    lambda_moved: Sublattice
    direct: bool


def lambda_decomposition(sd: SphericalData, moved: Iterable[str]) -> Decomposition:
    """Λ = ρ(𝓔)^⊥ ⊕ span{σ_E}; raises DecompositionFails otherwise."""
    sig = sigma_of_moved(sd, moved)
    r = sd.rank
    perp = annihilator([sd.fan.rays[e] for e in sig], r)
    lam = Sublattice.span([sd.sigma[k] for k in sorted(set(sig.values()))], r)
    ok = is_direct_sum(perp, lam)
    if not ok:
        raise DecompositionFails("ρ(𝓔)^⊥ + Λ(X,𝓔) is not a direct sum of Λ")
    return Decomposition(perp, lam, ok)


@dataclass(frozen=True)
class NonlinearResult:
    data: SphericalData
    lambda_A: Sublattice
    n_A: Sublattice
    sigma_of: Mapping[str, str]
    checks: Mapping[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lambda_A": [list(b) for b in self.lambda_A.basis],
            "n_A": [list(b) for b in self.n_A.basis],
            "sigma_of_moved": dict(sorted(self.sigma_of.items())),
            "sigma_A": "unknown (requires the wonderful classification)",
            "checks": dict(sorted(self.checks.items())),
            "data": self.data.to_json(),
        }


def nonlinear_restrict(sd: SphericalData, stable: Iterable[str]) -> NonlinearResult:
    """Spherical data of X under A(X, 𝒟) for 𝒟 containing every ℓ-divisor."""
    stable = frozenset(stable)
    unknown = stable - set(sd.fan.rays)
    if unknown:
        raise PreconditionError("unknown ray names %s" % sorted(unknown))
    moved = frozenset(sd.fan.rays) - stable
    ell, _ = classify_boundary(sd)
    if moved & ell:
        raise PreconditionError("moved set contains ℓ-divisors %s" % sorted(moved & ell))
    dec = lambda_decomposition(sd, moved)
    sig = sigma_of_moved(sd, moved)
    r = sd.rank
    lam_a = dec.rho_perp
    w = annihilator(dec.lambda_moved.basis, r)
    k = lam_a.rank

    def s_star(v):
        return tuple(dot(v, b) for b in lam_a.basis)

    f = sd.fan
    checks: Dict[str, bool] = {}
    checks["direct_sum"] = dec.direct
    checks["faces"] = all(is_face_of(intersect_subspace(f.cone(c), w), f.cone(c)) for c in f.all_cones)
    checks["join"] = all(
        is_join(f, restrict_to_subspace(f, annihilator([sd.sigma[sig[e]]], r), ambient_coords=True), e)
        for e in sorted(moved)
    )
    wmat = [list(s_star(b)) for b in w.basis]
    checks["s_star_injective"] = k == w.rank and (k == 0 or abs(det(wmat)) == 1)

    restricted = restrict_to_subspace(f, w, ambient_coords=True)
    # support: for σ not of the form σ_E, the Λ_A-component of σ
    used = set(sig.values())
    ineqs = []
    basis = list(lam_a.basis) + list(dec.lambda_moved.basis)
    for name, s in sorted(sd.sigma.items()):
        if name in used:
            continue
        c = coordinates(basis, s)
        ineqs.append(tuple(-int(x) for x in c[:k]))
    support = HalfspaceCone(k, tuple(ineqs))
    new_fan = Fan(k, {n: s_star(v) for n, v in restricted.rays.items()}, restricted.cones, support)
    colors = {n: s_star(v) for n, v in sd.colors.items()}
    out = SphericalData(k, None, colors, sd.sp, new_fan)
    checks["valid"] = not validate(new_fan)
    checks["smooth"] = checks["valid"] and is_smooth(new_fan)
    checks["complete"] = checks["valid"] and is_complete(new_fan)
    new_ell, _ = classify_boundary(out)
    checks["ell_preserved"] = new_ell == ell & stable
    return NonlinearResult(out, lam_a, w, sig, checks)


@dataclass(frozen=True)
class WonderfulLattice:
    xi: Sublattice
    invariant_factors: Tuple[int, ...]

    @property
    def quotient_factors(self) -> Tuple[int, ...]:
        """Nontrivial invariant factors of Λ/Ξ (0 stands for a free summand)."""
        return tuple(x for x in self.invariant_factors if x != 1)

    def to_json(self) -> dict:
        return {
            "xi": [list(b) for b in self.xi.basis],
            "invariant_factors": list(self.invariant_factors),
            "quotient_factors": list(self.quotient_factors),
        }


def wonderful_closure_lattice(sd: SphericalData) -> WonderfulLattice:
    """Ξ = span_Z Σ and the Smith invariants of Λ/Ξ."""
    if sd.sigma is None:
        raise PreconditionError("spherical roots unknown")
    vecs = [list(v) for _, v in sorted(sd.sigma.items())]
    xi = Sublattice.span(vecs, sd.rank)
    if not vecs:
        return WonderfulLattice(xi, tuple([0] * sd.rank))
    return WonderfulLattice(xi, tuple(smith_normal_form(vecs, sd.rank)))
