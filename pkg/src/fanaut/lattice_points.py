"""Lattice points of rational polytopes given by integer constraints."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor
from typing import List, Optional, Sequence, Tuple

from .cone import HalfspaceCone
from .exact_linalg import Vector, dot, rank, solve_integer, solve_rational, vec_mat


class Unbounded(ValueError):
    """The constraint region has a recession direction."""


Constraint = Tuple[Sequence[int], int]


def vertices(ineqs: Sequence[Constraint], dim: int) -> List[Tuple[Fraction, ...]]:
    """Vertices of ``{x : a.x >= b}``, each from a nonsingular choice of ``dim`` tight constraints."""
    if dim == 0:
        return [()] if all(b <= 0 for _, b in ineqs) else []
    found = set()
    for sub in combinations(ineqs, dim):
        rows = [list(a) for a, _ in sub]
        x = solve_rational(rows, [b for _, b in sub])
        if x is None:
            continue
        # singular systems have a solution set of positive dimension
        if rank(rows) < dim:
            continue
        if all(dot(a, x) >= b for a, b in ineqs):
            found.add(x)
    return sorted(found)


def lattice_points(
    ineqs: Sequence[Constraint],
    dim: int,
    eqs: Sequence[Constraint] = (),
) -> List[Vector]:
    """All integer x with ``a.x >= b`` for each inequality and ``a.x == b`` for each equation.

    Integer solutions of the equations are parametrised exactly; the box
    spanned by the vertices of the reduced polytope is then scanned.
    Raises :class:`Unbounded` if the region is not bounded.
    """
    if eqs:
        sol = solve_integer([list(a) for a, _ in eqs], [b for _, b in eqs], dim)
        if sol is None:
            return []
        x0, kernel = sol
    else:
        x0, kernel = (0,) * dim, [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    k = len(kernel)
    # a.(x0 + K^T t) >= b  <=>  (K a).t >= b - a.x0
    reduced = [(tuple(dot(a, kv) for kv in kernel), b - dot(a, x0)) for a, b in ineqs]
    if not HalfspaceCone(k, tuple(a for a, _ in reduced)).is_zero():
        raise Unbounded("constraint region is unbounded")
    verts = vertices(reduced, k)
    if not verts:
        return []
    lo = [ceil(min(v[i] for v in verts)) for i in range(k)]
    hi = [floor(max(v[i] for v in verts)) for i in range(k)]
    out = []
    for t in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(dot(a, t) >= b for a, b in reduced):
            out.append(tuple(x + y for x, y in zip(x0, vec_mat(t, kernel))) if k else tuple(x0))
    return sorted(out)


def bounding_box(ineqs: Sequence[Constraint], dim: int) -> Optional[int]:
    """Max absolute coordinate over all vertices, or None when empty."""
    verts = vertices(ineqs, dim)
    if not verts:
        return None
    return max(max((abs(c) for c in v), default=0) for v in verts)
