"""Fans on named rays: validation, smoothness, completeness, restriction, joins,
and the orbit closure order."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .cone import Cone, HalfspaceCone, NotStrictlyConvex, intersect, is_face_of
from .exact_linalg import Sublattice, Vector, is_primitive, is_unimodular_basis_part, primitive, rank


class FanFormatError(ValueError):
    """Malformed fan or spherical data file."""


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    cones: Tuple[Tuple[str, ...], ...] = ()
    witness: Optional[Vector] = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "detail": self.detail, "cones": [list(c) for c in self.cones]}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass(frozen=True)
class Fan:
    """A fan whose cones are listed by ray names.

    ``cones`` may list maximal cones only or any superset; faces are implied.
    ``support`` is the region the fan is meant to live in (None = everything).
    """

    ambient_rank: int
    rays: Mapping[str, Vector]
    cones: Tuple[FrozenSet[str], ...]
    support: Optional[HalfspaceCone] = None

    def __post_init__(self):
        object.__setattr__(self, "rays", dict(self.rays))
        object.__setattr__(self, "cones", tuple(frozenset(c) for c in self.cones))

    def __hash__(self):
        return hash((self.ambient_rank, tuple(sorted(self.rays.items())), self.cones))

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        try:
            n = data["rank"]
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise FanFormatError("rank must be a non-negative integer")
            rays = {}
            for name, vec in data["rays"].items():
                if not isinstance(vec, list) or len(vec) != n or not all(
                    isinstance(x, int) and not isinstance(x, bool) for x in vec
                ):
                    raise FanFormatError("ray %r must be a list of %d integers" % (name, n))
                rays[str(name)] = tuple(vec)
            cones = []
            for c in data["cones"]:
                if not isinstance(c, list) or not all(isinstance(x, str) for x in c):
                    raise FanFormatError("each cone must be a list of ray names")
                cones.append(frozenset(c))
            support = None
            if data.get("support") is not None:
                ineqs = data["support"]["inequalities"]
                for chi in ineqs:
                    if not isinstance(chi, list) or len(chi) != n or not all(
                        isinstance(x, int) and not isinstance(x, bool) for x in chi
                    ):
                        raise FanFormatError("support inequalities must be integer lists of length %d" % n)
                support = HalfspaceCone(n, tuple(tuple(chi) for chi in ineqs))
        except (KeyError, TypeError, AttributeError) as exc:
            raise FanFormatError("malformed fan data: %s" % exc) from exc
        return cls(n, rays, tuple(cones), support)

    def to_json(self) -> dict:
        out = {
            "rank": self.ambient_rank,
            "rays": {k: list(v) for k, v in sorted(self.rays.items())},
            "cones": [sorted(c) for c in self.maximal_cones()],
        }
        if self.support is not None:
            out["support"] = {"inequalities": [list(x) for x in self.support.inequalities]}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    # -- cone bookkeeping ---------------------------------------------------

    def cone(self, names: Iterable[str]) -> Cone:
        key = frozenset(names)
        cache = self._cone_cache
        if key not in cache:
            cache[key] = Cone.from_generators([self.rays[n] for n in key], self.ambient_rank)
        return cache[key]

    @cached_property
    def _cone_cache(self) -> Dict[FrozenSet[str], Cone]:
        return {}

    def names_of(self, cone: Cone) -> FrozenSet[str]:
        """Ray names of the rays of a cone (rays must be named rays of the fan)."""
        lookup = self._ray_lookup
        return frozenset(lookup[g] for g in cone.generators)

    @cached_property
    def _ray_lookup(self) -> Dict[Vector, str]:
        return {primitive(v): k for k, v in self.rays.items() if any(v)}

    def _is_simplicial(self, c: FrozenSet[str]) -> bool:
        vecs = [self.rays[n] for n in c]
        return rank(vecs) == len(vecs) if vecs else True

    @cached_property
    def all_cones(self) -> Tuple[FrozenSet[str], ...]:
        """Every cone of the fan (faces included), sorted by (dim, names)."""
        out = set()
        for c in self.cones:
            if self._is_simplicial(c):
                for k in range(len(c) + 1):
                    out.update(frozenset(s) for s in combinations(sorted(c), k))
            else:
                for f in self.cone(c).faces():
                    out.add(self.names_of(f))
        out.add(frozenset())
        return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))

    def maximal_cones(self) -> List[FrozenSet[str]]:
        listed = set(self.all_cones)
        maxi = [c for c in listed if not any(c < d for d in listed)]
        return sorted(maxi, key=lambda s: (len(s), sorted(s)))

    def cone_objects(self) -> Dict[FrozenSet[str], Cone]:
        return {c: self.cone(c) for c in self.all_cones}

    def ray_cones(self) -> Dict[str, Cone]:
        return {n: Cone.from_generators([v], self.ambient_rank) for n, v in self.rays.items()}

    def renamed(self, mapping: Mapping[str, str]) -> "Fan":
        return Fan(
            self.ambient_rank,
            {mapping.get(k, k): v for k, v in self.rays.items()},
            tuple(frozenset(mapping.get(n, n) for n in c) for c in self.cones),
            self.support,
        )

    def transformed(self, u: Sequence[Sequence[int]], u_inv_t: Optional[Sequence[Sequence[int]]] = None) -> "Fan":
        """Apply a unimodular change of basis ``v -> u @ v`` to N.

        ``u_inv_t`` (the inverse transpose) acts on the support inequalities.
        """
        from .exact_linalg import mat_vec

        support = self.support
        if support is not None:
            if u_inv_t is None:
                raise ValueError("inverse transpose needed to move the support")
            support = HalfspaceCone(self.ambient_rank, tuple(mat_vec(u_inv_t, chi) for chi in support.inequalities))
        return Fan(self.ambient_rank, {k: mat_vec(u, v) for k, v in self.rays.items()}, self.cones, support)


# ---------------------------------------------------------------------------
# validation


def validate(f: Fan) -> List[Violation]:
    """Every violation of the fan axioms; an empty list means valid."""
    out: List[Violation] = []
    n = f.ambient_rank
    used = set()
    for c in f.cones:
        missing = sorted(x for x in c if x not in f.rays)
        if missing:
            out.append(Violation("unknown_ray", "cone refers to unknown rays %s" % missing, (tuple(sorted(c)),)))
        used.update(c)
    if any(v.kind == "unknown_ray" for v in out):
        return out
    seen: Dict[Vector, str] = {}
    for name, v in sorted(f.rays.items()):
        if not any(v):
            out.append(Violation("zero_ray", "ray %s is zero" % name))
            continue
        if not is_primitive(v):
            out.append(Violation("non_primitive_ray", "ray %s = %s is not primitive" % (name, list(v))))
        p = primitive(v)
        if p in seen:
            out.append(Violation("duplicate_ray", "rays %s and %s span the same half-line" % (seen[p], name)))
        seen[p] = name
        if name not in used:
            out.append(Violation("unused_ray", "ray %s lies in no cone" % name))
    if any(v.kind in ("zero_ray", "duplicate_ray") for v in out):
        return out
    cones = {}
    for c in f.cones:
        key = tuple(sorted(c))
        if not f._is_simplicial(c):
            out.append(Violation("not_simplicial", "ray vectors are linearly dependent", (key,)))
        try:
            cones[frozenset(c)] = f.cone(c)
        except NotStrictlyConvex:
            out.append(Violation("not_strictly_convex", "cone contains a line", (key,)))
            continue
        got = f.names_of(cones[frozenset(c)]) if all(g in f._ray_lookup for g in cones[frozenset(c)].generators) else None
        if got is not None and got != frozenset(c):
            out.append(Violation("redundant_generator", "some listed rays are not extreme", (key,)))
        if f.support is not None and not f.support.contains_cone(cones[frozenset(c)]):
            bad = [x for x in key if not f.support.contains(f.rays[x])]
            out.append(Violation("outside_support", "rays %s lie outside the support region" % bad, (key,)))
    keys = sorted(cones, key=lambda s: (len(s), sorted(s)))
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            ca, cb = cones[a], cones[b]
            inter = intersect(ca, cb)
            if is_face_of(inter, ca) and is_face_of(inter, cb):
                continue
            out.append(
                Violation(
                    "overlap",
                    "cones meet outside a common face",
                    (tuple(sorted(a)), tuple(sorted(b))),
                    inter.sum_of_rays(),
                )
            )
    return out


def is_valid(f: Fan) -> bool:
    return not validate(f)


def is_smooth(f: Fan) -> bool:
    """Every cone is generated by part of a lattice basis."""
    return all(is_unimodular_basis_part([f.rays[x] for x in c], f.ambient_rank) for c in f.maximal_cones())


def covers_region(cones: Sequence[Cone], ambient_rank: int, region: Optional[HalfspaceCone] = None) -> bool:
    """Whether the union of the cones (assumed to form a fan) equals ``region``.

    Decided by the shared-facet criterion: all maximal cones have the
    dimension of the region and every facet of a maximal cone is either
    shared by two maximal cones or lies on the boundary of the region.
    """
    if region is None:
        region = HalfspaceCone.whole_space(ambient_rank)
    if not all(region.contains_cone(c) for c in cones):
        return False
    target = region.dim
    uniq = {c.generators: c for c in cones}
    allc = list(uniq.values())
    # in a fan, c is a face of d exactly when its rays are among those of d
    gensets = [frozenset(c.generators) for c in allc]
    maximal = [c for c, g in zip(allc, gensets) if not any(g < h for h in gensets)]
    if target == 0:
        return True
    if not maximal or any(c.dim != target for c in maximal):
        return False
    facet_count: Dict[Tuple[Vector, ...], int] = {}
    facet_obj: Dict[Tuple[Vector, ...], Cone] = {}
    for c in maximal:
        for face in c.facet_faces():
            facet_count[face.generators] = facet_count.get(face.generators, 0) + 1
            facet_obj[face.generators] = face
    for key, count in facet_count.items():
        if count >= 2:
            continue
        if not region.on_boundary(facet_obj[key]):
            return False
    return True


def is_complete(f: Fan) -> bool:
    """Union of the cones equals the support region (the whole space if none)."""
    return covers_region([f.cone(c) for c in f.maximal_cones()], f.ambient_rank, f.support)


# ---------------------------------------------------------------------------
# restriction and joins


def _synthetic_name(v: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in v) + "]"


def restrict_to_subspace(f: Fan, w: Sublattice, ambient_coords: bool = False) -> Fan:
    """The fan {c ∩ w}, in coordinates of the Hermite basis of w.

    Rays that are rays of ``f`` keep their names; new rays get a synthetic
    name built from their ambient coordinates.  With ``ambient_coords`` the
    result stays in the coordinates of ``f``.
    """
    n = f.ambient_rank
    if not w.is_saturated():
        raise ValueError("subspace lattice must be saturated")
    lookup = f._ray_lookup
    named: Dict[Vector, str] = {}
    cones = set()
    for c in f.all_cones:
        cut = f.cone(c).intersect_subspace(w)
        names = []
        for g in cut.generators:
            if g not in named:
                named[g] = lookup.get(g, _synthetic_name(g))
            names.append(named[g])
        cones.add(frozenset(names))
    if ambient_coords:
        rays = {name: v for v, name in named.items()}
        return Fan(n, rays, tuple(sorted(cones, key=lambda s: (len(s), sorted(s)))))
    rays = {name: w.coordinates(v) for v, name in named.items()}
    support = None
    if f.support is not None:
        # express the support inequalities on w: chi restricted to the basis
        from .exact_linalg import dot

        support = HalfspaceCone(
            w.rank, tuple(tuple(dot(b, chi) for b in w.basis) for chi in f.support.inequalities)
        )
    return Fan(w.rank, rays, tuple(sorted(cones, key=lambda s: (len(s), sorted(s)))), support)


def is_join(f: Fan, sub: Fan, ray: str) -> bool:
    """Every cone of f outside sub is generated by ``ray`` and a cone of sub.

    ``sub`` must be in the coordinates of ``f``; cones are compared as point
    sets, so names in ``sub`` are irrelevant.
    """
    n = f.ambient_rank
    v = f.rays[ray]
    sub_cones = {sub.cone(c) for c in sub.all_cones}
    ray_cone = Cone.from_generators([v], n)
    if ray_cone in sub_cones:
        return False
    joined = set()
    for s in sub_cones:
        try:
            joined.add(Cone.from_generators(list(s.generators) + [v], n))
        except NotStrictlyConvex:
            continue
    for c in f.all_cones:
        cone = f.cone(c)
        if cone in sub_cones:
            continue
        if cone not in joined:
            return False
    return True


# ---------------------------------------------------------------------------
# orbit closures


@dataclass(frozen=True)
class Poset:
    """A finite poset with its Hasse diagram.

    ``covers`` holds pairs ``(i, j)``: element i lies directly below j, i.e.
    orbit i is contained in the closure of orbit j with nothing in between.
    """

    elements: Tuple[object, ...]
    below: FrozenSet[Tuple[int, int]]
    covers: FrozenSet[Tuple[int, int]]

    @classmethod
    def from_relation(cls, elements: Sequence, leq) -> "Poset":
        n = len(elements)
        below = {(i, j) for i in range(n) for j in range(n) if i != j and leq(elements[i], elements[j])}
        covers = {
            (i, j) for (i, j) in below if not any((i, k) in below and (k, j) in below for k in range(n))
        }
        return cls(tuple(elements), frozenset(below), frozenset(covers))

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return i == j or (i, j) in self.below

    def maxima(self) -> List[int]:
        return [j for j in range(len(self.elements)) if not any((j, k) in self.below for k in range(len(self.elements)))]

    def up_degree(self, i: int) -> int:
        return sum(1 for (a, _) in self.covers if a == i)


def orbit_closure_poset(f: Fan) -> Poset:
    """Orbits of the torus action ordered by closure inclusion.

    The orbit of c' lies in the closure of the orbit of c iff c is a face of
    c'; the zero cone (open orbit) is the unique maximum.
    """
    cones = list(f.all_cones)
    objs = f.cone_objects()
    return Poset.from_relation(cones, lambda a, b: is_face_of(objs[b], objs[a]))
