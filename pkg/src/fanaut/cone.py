"""Rational polyhedral cones with exact generator and facet descriptions.

A :class:`Cone` is strictly convex and stored by its primitive ray
generators.  Facets are computed on demand by the double description method
and cached.  A :class:`HalfspaceCone` is given by inequalities and may contain
a line; it models valuation cones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .exact_linalg import (
    Sublattice,
    Vector,
    annihilator,
    dot,
    in_span,
    primitive,
    rank,
)


class NotStrictlyConvex(ValueError):
    """The generators span a cone containing a line."""


def _int_scale(v: Sequence) -> Vector:
    return primitive(v)


def double_description(inequalities: Sequence[Sequence[int]], dim: int):
    """Minimal generators of ``{x : <a, x> >= 0 for all a}``.

    Returns ``(lines, rays)``: a basis of the lineality space and one
    primitive representative (modulo the lines) of each extreme ray of the
    pointed part.
    """
    lines: List[List[int]] = [[int(i == j) for j in range(dim)] for i in range(dim)]
    rays: List[List[int]] = []
    seen: List[List[int]] = []
    for a in inequalities:
        if not any(a):
            continue
        vals = [dot(a, l) for l in lines]
        k = next((i for i, v in enumerate(vals) if v != 0), None)
        seen.append(list(a))
        if k is not None:
            l0 = lines.pop(k)
            v0 = vals.pop(k)
            if v0 < 0:
                l0 = [-x for x in l0]
                v0 = -v0
            lines = [_reduce_against(l, l0, v, v0) for l, v in zip(lines, vals)]
            rays = [_reduce_against(r, l0, dot(a, r), v0) for r in rays]
            rays.append(l0)
            lines = [list(_int_scale(l)) for l in lines]
            rays = [list(_int_scale(r)) for r in rays]
            continue
        free = dim - len(lines)
        pos, zero, neg = [], [], []
        for r in rays:
            v = dot(a, r)
            (pos if v > 0 else neg if v < 0 else zero).append((r, v))
        new = [r for r, _ in pos] + [r for r, _ in zero]
        prev = seen[:-1]
        for p, vp in pos:
            tp = {i for i, s in enumerate(prev) if dot(s, p) == 0}
            for n, vn in neg:
                common = [prev[i] for i in tp if dot(prev[i], n) == 0]
                if (rank(common) if common else 0) != free - 2:
                    continue
                comb = [vp * x - vn * y for x, y in zip(n, p)]
                new.append(list(_int_scale(comb)))
        rays = new
    uniq = []
    for r in rays:
        t = tuple(r)
        if t not in uniq:
            uniq.append(t)
    return [tuple(l) for l in lines], uniq


def _reduce_against(v, l0, val, v0):
    # v0 > 0; keeps the direction of v and kills its pairing with the new inequality
    return [v0 * x - val * y for x, y in zip(v, l0)]


def _project_to_span(v: Sequence[int], complement: Sequence[Sequence[int]]) -> Vector:
    """Canonical representative of v modulo span(complement): the one orthogonal to it."""
    if not complement:
        return tuple(v)
    # solve for coefficients c with <v - sum c_j w_j, w_i> = 0
    from fractions import Fraction

    from .exact_linalg import solve_rational

    gram = [[dot(wi, wj) for wj in complement] for wi in complement]
    rhs = [dot(v, wi) for wi in complement]
    c = solve_rational(gram, rhs)
    out = [Fraction(x) for x in v]
    for cj, w in zip(c, complement):
        out = [o - cj * x for o, x in zip(out, w)]
    return tuple(out)


@dataclass(frozen=True)
class Cone:
    """A strictly convex rational polyhedral cone in Q^n."""

    ambient_rank: int
    generators: Tuple[Vector, ...] = field(default=())

    @classmethod
    def from_generators(cls, vectors: Iterable[Sequence[int]], ambient_rank: Optional[int] = None) -> "Cone":
        vecs = [tuple(v) for v in vectors]
        if ambient_rank is None:
            if not vecs:
                raise ValueError("ambient rank required for the zero cone")
            ambient_rank = len(vecs[0])
        for v in vecs:
            if len(v) != ambient_rank:
                raise ValueError("generator %r has wrong length" % (v,))
        vecs = sorted({_int_scale(v) for v in vecs if any(v)})
        if not vecs:
            return cls(ambient_rank, ())
        d = rank(vecs)
        if d == len(vecs):
            # simplicial: every generator is extreme and the cone is pointed
            return cls(ambient_rank, tuple(vecs))
        probe = cls(ambient_rank, tuple(vecs))
        facets = probe.facets
        if rank(facets) != d:
            raise NotStrictlyConvex("cone on %r contains a line" % (vecs,))
        extreme = [v for v in vecs if rank([f for f in facets if dot(f, v) == 0]) == d - 1]
        cone = cls(ambient_rank, tuple(sorted(extreme)))
        if len(extreme) == len(vecs):
            return probe
        return cone

    @classmethod
    def zero(cls, ambient_rank: int) -> "Cone":
        return cls(ambient_rank, ())

    @property
    def rays(self) -> Tuple[Vector, ...]:
        return self.generators

    @cached_property
    def dim(self) -> int:
        return rank(self.generators) if self.generators else 0

    @cached_property
    def span_complement(self) -> Tuple[Vector, ...]:
        """Basis of the integer vectors orthogonal to span(self)."""
        return annihilator(self.generators, self.ambient_rank).basis

    @cached_property
    def facets(self) -> Tuple[Vector, ...]:
        """Primitive inner facet normals, taken inside span(self)."""
        if not self.generators:
            return ()
        lines, rays = double_description(self.generators, self.ambient_rank)
        comp = self.span_complement
        out = set()
        for r in rays:
            p = _project_to_span(r, comp)
            if any(p):
                out.add(_int_scale(p))
        return tuple(sorted(out))

    def in_span(self, v: Sequence[int]) -> bool:
        return all(dot(e, v) == 0 for e in self.span_complement)

    def contains(self, v: Sequence[int]) -> bool:
        if not self.generators:
            return not any(v)
        if not self.in_span(v):
            return False
        return all(dot(f, v) >= 0 for f in self.facets)

    def relative_interior_contains(self, v: Sequence[int]) -> bool:
        if not self.generators:
            return not any(v)
        if not self.in_span(v):
            return False
        return all(dot(f, v) > 0 for f in self.facets)

    def equations(self) -> Tuple[Vector, ...]:
        return self.span_complement

    def face_for(self, normals: Iterable[Sequence[int]]) -> "Cone":
        ns = list(normals)
        return Cone(self.ambient_rank, tuple(g for g in self.generators if all(dot(n, g) == 0 for n in ns)))

    def facet_faces(self) -> List["Cone"]:
        return [self.face_for([f]) for f in self.facets]

    def faces(self) -> List["Cone"]:
        """All faces, from the zero cone up to the cone itself."""
        found = {self.generators: self}
        stack = [self]
        while stack:
            c = stack.pop()
            for f in c.facet_faces():
                if f.generators not in found:
                    found[f.generators] = f
                    stack.append(f)
        zero = Cone.zero(self.ambient_rank)
        found.setdefault((), zero)
        return sorted(found.values(), key=lambda c: (c.dim, c.generators))

    def is_face_of(self, other: "Cone") -> bool:
        return is_face_of(self, other)

    def intersect_subspace(self, w: Sublattice) -> "Cone":
        return intersect_subspace(self, w)

    def sum_of_rays(self) -> Vector:
        return tuple(sum(c) for c in zip(*self.generators)) if self.generators else (0,) * self.ambient_rank

    def halfspaces(self) -> List[Vector]:
        """Inequalities (including both signs of each equation) cutting out the cone."""
        out = list(self.facets)
        for e in self.span_complement:
            out.append(tuple(e))
            out.append(tuple(-x for x in e))
        return out


def is_face_of(f: Cone, c: Cone) -> bool:
    if f.ambient_rank != c.ambient_rank:
        raise ValueError("ambient ranks differ")
    if not all(c.contains(g) for g in f.generators):
        return False
    tight = [n for n in c.facets if all(dot(n, g) == 0 for g in f.generators)]
    return c.face_for(tight).generators == f.generators


def cone_from_halfspaces(inequalities: Sequence[Sequence[int]], ambient_rank: int) -> Cone:
    """The pointed cone {x : <a, x> >= 0}; raises if it contains a line."""
    lines, rays = double_description(inequalities, ambient_rank)
    if lines:
        raise NotStrictlyConvex("halfspace system has lineality space %r" % (lines,))
    return Cone.from_generators(rays, ambient_rank)


def intersect_subspace(c: Cone, w: Sublattice) -> Cone:
    """The cone c ∩ (w ⊗ Q), with exact primitive ray generators."""
    if w.ambient_rank != c.ambient_rank:
        raise ValueError("ambient ranks differ")
    n = c.ambient_rank
    comp = annihilator(w.basis, n).basis
    if all(dot(e, g) == 0 for e in comp for g in c.generators):
        return c
    ineqs = list(c.halfspaces())
    for e in comp:
        ineqs.append(tuple(e))
        ineqs.append(tuple(-x for x in e))
    return cone_from_halfspaces(ineqs, n)


def intersect(a: Cone, b: Cone) -> Cone:
    return cone_from_halfspaces(list(a.halfspaces()) + list(b.halfspaces()), a.ambient_rank)


@dataclass(frozen=True)
class HalfspaceCone:
    """``{v : <v, chi> >= 0 for every chi}``; may have a nonzero linear part."""

    ambient_rank: int
    inequalities: Tuple[Vector, ...] = ()

    @classmethod
    def whole_space(cls, n: int) -> "HalfspaceCone":
        return cls(n, ())

    @cached_property
    def generators(self):
        """(lines, rays) of the cone."""
        return double_description(self.inequalities, self.ambient_rank)

    @cached_property
    def lineality(self) -> Sublattice:
        return annihilator(self.inequalities, self.ambient_rank)

    @cached_property
    def dim(self) -> int:
        lines, rays = self.generators
        vecs = list(lines) + list(rays)
        return rank(vecs) if vecs else 0

    def contains(self, v: Sequence[int]) -> bool:
        return all(dot(chi, v) >= 0 for chi in self.inequalities)

    def contains_cone(self, c: Cone) -> bool:
        return all(self.contains(g) for g in c.generators)

    def is_zero(self) -> bool:
        lines, rays = self.generators
        return not lines and not rays

    def on_boundary(self, c: Cone) -> bool:
        """True iff c lies in a proper face of this cone (some nontrivial inequality is tight on it)."""
        lines, rays = self.generators
        gens = list(lines) + list(rays)
        for chi in self.inequalities:
            if all(dot(chi, g) == 0 for g in gens):
                continue
            if all(dot(chi, g) == 0 for g in c.generators):
                return True
        return False
