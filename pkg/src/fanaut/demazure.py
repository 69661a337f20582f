"""Demazure roots of a smooth complete fan and the root system Φ(X, 𝒟)."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .cone import HalfspaceCone
from .exact_linalg import Vector, det, dot, rank
from .fan import Fan
from .lattice_points import Unbounded, lattice_points


class BoundTooSmall(ValueError):
    """A vertex of the root polytope lies outside the scanned box."""


@dataclass(frozen=True, order=True)
class DemazureRoot:
    """A character alpha together with the one ray it pairs to -1 with."""

    alpha: Vector
    moved: str

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "moved": self.moved}


def neg(v: Sequence[int]) -> Vector:
    return tuple(-x for x in v)


def _check_bounded(f: Fan) -> None:
    rec = HalfspaceCone(f.ambient_rank, tuple(f.rays.values()))
    if not rec.is_zero():
        raise Unbounded("root polytope is unbounded: the rays do not positively span N (fan not complete)")


def demazure_roots(f: Fan) -> List[DemazureRoot]:
    """All Demazure roots, sorted lexicographically by character.

    For each ray the roots moving it are the lattice points of
    ``{<v_i, a> = -1, <v_j, a> >= 0 for j != i}``, enumerated exactly.
    """
    _check_bounded(f)
    out = []
    names = sorted(f.rays)
    for name in names:
        eq = [(f.rays[name], -1)]
        ineqs = [(f.rays[o], 0) for o in names if o != name]
        for a in lattice_points(ineqs, f.ambient_rank, eq):
            out.append(DemazureRoot(a, name))
    return sorted(out)


def _cramer_vertices(rows: List[Vector], n: int) -> List[Tuple[Fraction, ...]]:
    """Vertices of {<v, a> >= -1} by Cramer's rule on every n-subset of rows."""
    verts = []
    for sub in combinations(rows, n):
        d = det([list(r) for r in sub])
        if d == 0:
            continue
        x = []
        for i in range(n):
            m = [list(r) for r in sub]
            for k in range(n):
                m[k][i] = -1
            x.append(Fraction(det(m), d))
        if all(sum(r[i] * x[i] for i in range(n)) >= -1 for r in rows):
            verts.append(tuple(x))
    return verts


def roots_oracle(f: Fan, box_bound: int) -> List[DemazureRoot]:
    """Independent check: scan every integer point of ``[-box_bound, box_bound]^n``."""
    _check_bounded(f)
    n = f.ambient_rank
    names = sorted(f.rays)
    rows = [tuple(f.rays[k]) for k in names]
    for v in _cramer_vertices(rows, n):
        if any(abs(c) > box_bound for c in v):
            raise BoundTooSmall("vertex %s exceeds box bound %d" % ([str(c) for c in v], box_bound))
    out = []
    for a in product(range(-box_bound, box_bound + 1), repeat=n):
        vals = [sum(r[i] * a[i] for i in range(n)) for r in rows]
        if vals.count(-1) == 1 and all(x >= 0 or x == -1 for x in vals):
            out.append(DemazureRoot(tuple(a), names[vals.index(-1)]))
    return sorted(out)


def oracle_bound(f: Fan) -> int:
    """Smallest box bound accepted by :func:`roots_oracle`."""
    from math import ceil

    rows = [tuple(f.rays[k]) for k in sorted(f.rays)]
    verts = _cramer_vertices(rows, f.ambient_rank)
    return max((ceil(abs(c)) for v in verts for c in v), default=0)


@dataclass(frozen=True)
class RootData:
    """Roots of X together with the stabilization data for a set 𝒟 of rays."""

    all_roots: Tuple[DemazureRoot, ...]
    stable: FrozenSet[str]
    moved_set: FrozenSet[str]
    phi: Tuple[Vector, ...] = ()
    phi_plus: Tuple[Vector, ...] = ()
    psi: Tuple[Vector, ...] = ()

    @property
    def moved_ray(self) -> Dict[Vector, str]:
        return {r.alpha: r.moved for r in self.all_roots}

    def X(self, alpha: Sequence[int]) -> Optional[str]:
        return self.moved_ray.get(tuple(alpha))

    def to_json(self) -> dict:
        return {
            "stable": sorted(self.stable),
            "moved": sorted(self.moved_set),
            "phi": [list(a) for a in self.phi],
            "phi_plus": [list(a) for a in self.phi_plus],
            "psi": [list(a) for a in self.psi],
        }


def phi(roots: Iterable[DemazureRoot], stable: Iterable[str], ray_names: Iterable[str]) -> RootData:
    """Φ(X, 𝒟): roots whose negatives are roots, both moving rays outside 𝒟."""
    roots = tuple(sorted(roots))
    stable = frozenset(stable)
    names = frozenset(ray_names)
    unknown = stable - names
    if unknown:
        raise KeyError("unknown ray names in stable set: %s" % sorted(unknown))
    moved = names - stable
    X = {r.alpha: r.moved for r in roots}
    ph = sorted(a for a, d in X.items() if d in moved and X.get(neg(a)) in moved)
    return RootData(roots, stable, moved, tuple(ph))


def _lex_positive(v: Sequence[int]) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def is_positive(alpha: Sequence[int], functional: Optional[Sequence[int]] = None) -> bool:
    """Positivity for the order (functional, then lexicographic)."""
    if functional is not None:
        s = dot(functional, alpha)
        if s:
            return s > 0
    return _lex_positive(alpha)


def simple_roots(phi_plus: Sequence[Vector]) -> Tuple[Vector, ...]:
    """Elements of phi_plus that are not the sum of two elements of phi_plus."""
    pos = set(phi_plus)
    sums = {tuple(x + y for x, y in zip(a, b)) for a in pos for b in pos}
    return tuple(sorted(a for a in pos if a not in sums))


def positive_system(rd: RootData, functional: Optional[Sequence[int]] = None) -> RootData:
    """Split Φ into positive and negative roots and extract the simple roots Ψ."""
    ph = set(rd.phi)
    for a in ph:
        if neg(a) not in ph:
            raise ValueError("Φ is not closed under negation: %r" % (a,))
    plus = tuple(sorted(a for a in ph if is_positive(a, functional)))
    return replace(rd, phi_plus=plus, psi=simple_roots(plus))


def check_triple(roots: Sequence[DemazureRoot], within: Optional[Iterable[Sequence[int]]] = None) -> List[dict]:
    """Verify the triple lemma on pairs alpha != beta with X(alpha) == X(beta).

    Pairs are drawn from ``within`` (default: all roots whose negative is a
    root, i.e. Φ(X, ∅)); the lemma needs both alpha and beta in a
    negation-closed root set.
    """
    X = {r.alpha: r.moved for r in roots}
    if within is None:
        pool = sorted(a for a in X if neg(a) in X)
    else:
        pool = sorted(tuple(a) for a in within)
    pool_set = set(pool)
    out = []
    for a, b in combinations(pool, 2):
        if X[a] != X[b]:
            continue
        for x, y in ((a, b), (b, a)):
            g = tuple(p - q for p, q in zip(x, y))
            if g not in pool_set or neg(g) not in pool_set:
                out.append({"check": "triple", "alpha": list(x), "beta": list(y), "detail": "alpha-beta or its negative missing"})
                continue
            if X.get(g) != X.get(neg(y)):
                out.append({"check": "triple", "alpha": list(x), "beta": list(y), "detail": "X(alpha-beta) != X(-beta)"})
            if X.get(neg(g)) != X.get(neg(x)):
                out.append({"check": "triple", "alpha": list(x), "beta": list(y), "detail": "X(beta-alpha) != X(-alpha)"})
    return out


def pairing_matrix(rd: RootData, f: Fan) -> List[List[int]]:
    """Rows indexed by alpha in Ψ: the values <rho(X(alpha)), beta> for beta in Ψ."""
    X = rd.moved_ray
    return [[dot(f.rays[X[a]], b) for b in rd.psi] for a in rd.psi]


def check_independent(rd: RootData, f: Fan) -> List[dict]:
    """rho(X(alpha)), alpha in Ψ, are distinct and independent; the Ψ×Ψ pairing matrix is nondegenerate."""
    X = rd.moved_ray
    out = []
    names = [X[a] for a in rd.psi]
    if len(set(names)) != len(names):
        out.append({"check": "independent", "detail": "moved rays of simple roots not distinct: %s" % names})
    vecs = [f.rays[n] for n in names]
    if vecs and rank(vecs) != len(vecs):
        out.append({"check": "independent", "detail": "moved rays of simple roots linearly dependent"})
    m = pairing_matrix(rd, f)
    if m and det(m) == 0:
        out.append({"check": "independent", "detail": "pairing matrix %s is degenerate" % m})
    return out
