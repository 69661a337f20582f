"""Invariants of a smooth complete toric variety under the Levi group A(X, 𝒟).

Coordinates on N_A: a vector v of N is sent to its values on the Hermite
basis of Λ_A, ``s(v) = (<v, λ_1>, ..., <v, λ_k>)``.  This is the map dual to
the inclusion Λ_A ⊆ Λ, so cone rays and color functionals land in the same
lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .cone import Cone, intersect_subspace, is_face_of
from .demazure import RootData, neg
from .exact_linalg import Sublattice, Vector, annihilator, coordinates, det, dot, rank
from .fan import Fan, Poset, covers_region


@dataclass(frozen=True)
class ColoredCone:
    cone: Cone
    colors: FrozenSet[str]

    def sort_key(self):
        return (self.cone.dim, self.cone.generators, sorted(self.colors))

    def to_json(self) -> dict:
        return {"rays": [list(g) for g in self.cone.generators], "colors": sorted(self.colors)}


@dataclass(frozen=True)
class ColoredFan:
    """Colored cones in N_A plus the color functionals.

    ``source`` maps each cone of the original fan (by ray names) to the
    index of its colored cone; it is ignored by equality.
    """

    rank: int
    cones: Tuple[ColoredCone, ...]
    color_functionals: Mapping[str, Vector]
    source: Mapping[FrozenSet[str], int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "color_functionals", dict(self.color_functionals))
        object.__setattr__(self, "source", dict(self.source))

    def __hash__(self):
        return hash((self.rank, self.cones, tuple(sorted(self.color_functionals.items()))))

    def maximal(self) -> List[ColoredCone]:
        return [
            c for c in self.cones
            if not any(d is not c and d.cone != c.cone and is_face_of(c.cone, d.cone) for d in self.cones)
        ]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "cones": [c.to_json() for c in self.cones],
            "maximal": [c.to_json() for c in self.maximal()],
            "color_functionals": {k: list(v) for k, v in sorted(self.color_functionals.items())},
        }


@dataclass(frozen=True)
class LeviInvariants:
    lambda_A: Sublattice
    psi_perp: Sublattice
    boundary_A: Tuple[str, ...]
    colors_A: Mapping[str, Vector]
    pa_simple_roots: Tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors_A", dict(self.colors_A))

    @property
    def nA_basis(self) -> Tuple[Vector, ...]:
        return self.psi_perp.basis

    @property
    def rank(self) -> int:
        return self.lambda_A.rank

    def s(self, v: Sequence) -> tuple:
        """N -> N_A: values on the basis of Λ_A."""
        return tuple(dot(v, lam) for lam in self.lambda_A.basis)

    def to_json(self) -> dict:
        return {
            "lambda_A": [list(b) for b in self.lambda_A.basis],
            "nA_basis": [list(b) for b in self.nA_basis],
            "boundary_A": list(self.boundary_A),
            "colors_A": {k: list(v) for k, v in sorted(self.colors_A.items())},
            "pa_simple_roots": [list(a) for a in self.pa_simple_roots],
        }


def map_cone(cone: Cone, s, k: int) -> Cone:
    """Image of a cone under the linear map s, as a cone in Z^k."""
    return Cone.from_generators([s(g) for g in cone.generators], k)


def levi_invariants(f: Fan, rd: RootData) -> LeviInvariants:
    n = f.ambient_rank
    X = rd.moved_ray
    psi = rd.psi
    lam = annihilator([f.rays[X[a]] for a in psi], n)
    psi_perp = annihilator(psi, n)
    moved_by_psi = {X[a] for a in psi}
    color_names = sorted({X[neg(a)] for a in psi} - moved_by_psi)
    boundary = tuple(sorted(d for d, v in f.rays.items() if all(dot(v, a) == 0 for a in psi)))
    inv = LeviInvariants(lam, psi_perp, boundary, {}, ())
    colors = {d: inv.s(f.rays[d]) for d in color_names}
    pa = tuple(a for a in psi if X[neg(a)] not in colors)
    return LeviInvariants(lam, psi_perp, boundary, colors, pa)


def cone_colors(names: FrozenSet[str], rd: RootData, colors: Sequence[str]) -> FrozenSet[str]:
    """d(c): colors D such that every positive β with X(-β) = D has X(β), X(-β) among the rays of c."""
    X = rd.moved_ray
    out = set()
    for d in colors:
        betas = [b for b in rd.phi_plus if X[neg(b)] == d]
        if betas and all(X[b] in names and X[neg(b)] in names for b in betas):
            out.add(d)
    return frozenset(out)


def colored_fan(f: Fan, rd: RootData, inv: LeviInvariants) -> ColoredFan:
    k = inv.rank
    found: Dict[ColoredCone, None] = {}
    per_source = {}
    for c in f.all_cones:
        cut = intersect_subspace(f.cone(c), inv.psi_perp)
        cc = ColoredCone(map_cone(cut, inv.s, k), cone_colors(c, rd, list(inv.colors_A)))
        found.setdefault(cc)
        per_source[c] = cc
    cones = tuple(sorted(found, key=ColoredCone.sort_key))
    index = {cc: i for i, cc in enumerate(cones)}
    return ColoredFan(k, cones, inv.colors_A, {c: index[cc] for c, cc in per_source.items()})


def check_horospherical(cf: ColoredFan) -> bool:
    return covers_region([c.cone for c in cf.cones], cf.rank)


def check_empty_color_face(f: Fan, rd: RootData, cf: ColoredFan, inv: Optional[LeviInvariants] = None) -> List[dict]:
    """d(c) is empty iff c ∩ Ψ^⊥ is a face of c, for each source cone c."""
    if inv is None:
        inv = levi_invariants(f, rd)
    out = []
    for c, i in sorted(cf.source.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        cone = f.cone(c)
        is_face = is_face_of(intersect_subspace(cone, inv.psi_perp), cone)
        empty = not cf.cones[i].colors
        if is_face != empty:
            out.append({"check": "empty_color_face", "cone": sorted(c), "face": is_face, "colors": sorted(cf.cones[i].colors)})
    return out


def check_colors_in_cones(cf: ColoredFan) -> List[dict]:
    out = []
    for c in cf.cones:
        for d in sorted(c.colors):
            if not c.cone.contains(cf.color_functionals[d]):
                out.append({"check": "color_in_cone", "color": d, "rays": [list(g) for g in c.cone.generators]})
    return out


def check_abelian_orthogonality(f: Fan, rd: RootData, inv: LeviInvariants) -> List[dict]:
    """For α in Ψ with X(-α) a color and β in Φ₊∖{α}: X(-α) != X(β), X(α) != X(β), and <ρ(X(-α)), β> = 0 when β is simple."""
    X = rd.moved_ray
    out = []
    psi = set(rd.psi)
    for a in rd.psi:
        d = X[neg(a)]
        if d not in inv.colors_A:
            continue
        for b in rd.phi_plus:
            if b == a:
                continue
            if X[b] == d:
                out.append({"check": "abelian", "alpha": list(a), "beta": list(b), "detail": "X(-alpha) == X(beta)"})
            if X[b] == X[a]:
                out.append({"check": "abelian", "alpha": list(a), "beta": list(b), "detail": "X(alpha) == X(beta)"})
            if b in psi and dot(f.rays[d], b) != 0:
                out.append({"check": "abelian", "alpha": list(a), "beta": list(b), "detail": "<rho(X(-alpha)), beta> != 0"})
    return out


def check_color_independence(inv: LeviInvariants) -> List[dict]:
    """The A-color functionals, as a family in N_A, are linearly independent.

    This fails whenever two colors share a functional (or one is zero), which
    happens e.g. for ℙ(𝒪 ⊕ 𝒪(1,1)) over ℙ¹×ℙ¹ with 𝒟 = ∅; see the ledger.
    """
    vecs = list(inv.colors_A.values())
    if vecs and rank(vecs) != len(vecs):
        return [{"check": "color_independence",
                 "detail": "color functionals %s are dependent" % {k: list(v) for k, v in sorted(inv.colors_A.items())}}]
    return []


def a_orbit_poset(cf: ColoredFan) -> Poset:
    """Orbits of A ordered by closure: (c2, d2) lies below (c1, d1) iff c1 is a face of c2 and d1 ⊆ d2."""
    return Poset.from_relation(
        list(cf.cones), lambda lo, hi: is_face_of(hi.cone, lo.cone) and hi.colors <= lo.colors
    )


def poset_to_json(p: Poset) -> dict:
    return {
        "elements": [e.to_json() if hasattr(e, "to_json") else sorted(e) for e in p.elements],
        "covers": sorted([list(c) for c in p.covers]),
    }


# ---------------------------------------------------------------------------
# isomorphism of colored fans


def _apply(basis, images, v):
    c = coordinates(basis, v)
    k = len(v)
    return tuple(sum((ci * img[j] for ci, img in zip(c, images)), Fraction(0)) for j in range(k))


def _signature(cf: ColoredFan):
    return sorted((c.cone.dim, len(c.cone.generators), len(c.colors)) for c in cf.cones)


def colored_fans_isomorphic(a: ColoredFan, b: ColoredFan) -> bool:
    """Whether some unimodular map N_A -> N_A' carries colored cones to colored cones.

    Colors may be renamed, but the bijection must be induced by the map on
    their functionals.
    """
    if a.rank != b.rank or len(a.cones) != len(b.cones) or len(a.color_functionals) != len(b.color_functionals):
        return False
    if _signature(a) != _signature(b):
        return False
    k = a.rank
    if k == 0:
        return True
    top = [c for c in a.cones if c.cone.dim == k]
    if not top:
        raise NotImplementedError("isomorphism test needs a full-dimensional cone")
    src = top[0]
    gens = list(src.cone.generators)
    basis = []
    for g in gens:
        if rank(basis + [g]) > len(basis):
            basis.append(g)
    target_cones = {c.cone.generators: c for c in b.cones}
    b_colors = {v: n for n, v in b.color_functionals.items()}
    for cand in b.cones:
        if cand.cone.dim != k or len(cand.cone.generators) != len(gens) or len(cand.colors) != len(src.colors):
            continue
        for images in permutations(cand.cone.generators, k):
            mat = [_apply(basis, images, tuple(int(i == j) for j in range(k))) for i in range(k)]
            if any(x.denominator != 1 for row in mat for x in row):
                continue
            if abs(det([[int(x) for x in row] for row in mat])) != 1:
                continue
            if _matches(a, b, basis, images, target_cones, b_colors):
                return True
    return False


def _matches(a, b, basis, images, target_cones, b_colors) -> bool:
    def t(v):
        return tuple(int(x) for x in _apply(basis, images, v))

    rename = {}
    for name, v in a.color_functionals.items():
        w = t(v)
        if w not in b_colors:
            return False
        rename[name] = b_colors[w]
    if len(set(rename.values())) != len(rename):
        return False
    for c in a.cones:
        key = tuple(sorted(t(g) for g in c.cone.generators))
        other = target_cones.get(key)
        if other is None or frozenset(rename[d] for d in c.colors) != other.colors:
            return False
    return True
