"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints; matrices are sequences of row vectors.
Nothing in here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[int, ...]
Matrix = List[List[int]]


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dimension mismatch: %d vs %d" % (len(u), len(v)))
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence) -> Vector:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    if all(isinstance(x, int) for x in v):
        g = gcd(*v)
        if g == 0:
            raise ValueError("zero vector has no primitive representative")
        return tuple(x // g for x in v)
    fr = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def is_primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, (abs(x) for x in v), 0) == 1


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix: the combination sum v[i] * m[i]."""
    if not m:
        return ()
    out = [0] * len(m[0])
    for c, row in zip(v, m):
        if c:
            for j, x in enumerate(row):
                out[j] += c * x
    return tuple(out)


# ---------------------------------------------------------------------------
# rational elimination


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not all(isinstance(x, int) for r in rows for x in r):
        return len(rref(rows)[1])
    # fraction-free elimination, rows kept primitive
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        a = m[r][c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(m[i], m[r])]
                g = gcd(*row)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def det(m: Sequence[Sequence]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """One solution x of ``rows @ x == rhs`` over Q, or None if inconsistent."""
    if not rows:
        return None if any(rhs) else ()
    n = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return tuple(x)


def nullspace_rational(rows: Sequence[Sequence], ncols: int) -> List[Tuple[Fraction, ...]]:
    """Basis of {x in Q^ncols : rows @ x == 0}."""
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


def in_span(rows: Sequence[Sequence], v: Sequence) -> bool:
    if not rows:
        return not any(v)
    return rank(list(rows) + [list(v)]) == rank(rows)


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """Rational coordinates of v in the given (independent) row basis, or None."""
    if not basis:
        return () if not any(v) else None
    return solve_rational(transpose(basis), v)


# ---------------------------------------------------------------------------
# integer normal forms


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  The nonzero
    rows of ``h`` come first, pivots are positive and strictly move right, and
    entries above a pivot are reduced into ``[0, pivot)``.
    """
    h = [list(r) for r in m]
    nrows = len(h)
    ncols = len(h[0]) if h else 0
    u = identity(nrows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant 1
            h[r], h[i] = (
                [x * s + y * t for s, t in zip(h[r], h[i])],
                [-q * s + p * t for s, t in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [x * s + y * t for s, t in zip(u[r], u[i])],
                [-q * s + p * t for s, t in zip(u[r], u[i])],
            )
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            f = h[i][c] // piv
            if f:
                h[i] = [s - f * t for s, t in zip(h[i], h[r])]
                u[i] = [s - f * t for s, t in zip(u[i], u[r])]
        r += 1
    return h, u


def smith_normal_form(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[int]:
    """Invariant factors of ``Z^ncols / rowspan(m)``.

    The list has one entry per column: the diagonal of the Smith form, padded
    with zeros, so ``[[0, 0]]`` gives ``[0, 0]``.  Nonzero factors are positive
    and divide their successors.
    """
    a = [list(r) for r in m]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    nrows = len(a)
    diag: List[int] = []
    t = 0
    while t < min(nrows, ncols):
        # pick the smallest nonzero entry in the remaining block as pivot
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, nrows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # move a smaller remainder into the pivot position and retry
                best = None
                for i in range(t, nrows):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(best[1])):
                        best = (("r", i), a[i][t])
                for j in range(t, ncols):
                    if a[t][j] and (best is None or abs(a[t][j]) < abs(best[1])):
                        best = (("c", j), a[t][j])
                kind, idx = best[0]
                if kind == "r":
                    a[t], a[idx] = a[idx], a[t]
                else:
                    for row in a:
                        row[t], row[idx] = row[idx], row[t]
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            bad = next(
                ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols) if a[i][j] % p),
                None,
            )
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag + [0] * (ncols - len(diag))


def solve_integer(rows: Sequence[Sequence[int]], rhs: Sequence[int], ncols: int):
    """Integer solutions of ``rows @ x == rhs``.

    Returns ``(x0, kernel)`` where every solution is ``x0 + sum t_i kernel[i]``
    with integer ``t``, or ``None`` when there is no integer solution.
    """
    if not rows:
        if any(rhs):
            return None
        return (0,) * ncols, [tuple(r) for r in identity(ncols)]
    h, u = hermite_normal_form(transpose(rows))
    # u @ rows^T == h, so rows @ u^T == h^T (lower echelon in columns)
    k = len(rows)
    y = [0] * ncols
    piv_row = 0
    for c in range(k):
        # equation c: sum_j h[j][c] * y[j] == rhs[c]
        acc = sum(h[j][c] * y[j] for j in range(piv_row))
        if piv_row < ncols and h[piv_row][c] != 0 and all(h[piv_row][cc] == 0 for cc in range(c)):
            rem = rhs[c] - acc
            if rem % h[piv_row][c]:
                return None
            y[piv_row] = rem // h[piv_row][c]
            piv_row += 1
        elif acc != rhs[c]:
            return None
    x0 = vec_mat(y, u)
    kernel = [tuple(u[j]) for j in range(ncols) if not any(h[j])]
    return tuple(x0), kernel


# ---------------------------------------------------------------------------
# sublattices


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^n stored by its row Hermite basis."""

    ambient_rank: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], ambient_rank: int) -> "Sublattice":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_rank:
                raise ValueError("vector %r has wrong length for rank %d" % (v, ambient_rank))
        if not vecs:
            return cls(ambient_rank, ())
        h, _ = hermite_normal_form(vecs)
        return cls(ambient_rank, tuple(tuple(r) for r in h if any(r)))

    @classmethod
    def full(cls, n: int) -> "Sublattice":
        return cls(n, tuple(tuple(r) for r in identity(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return Sublattice.span(list(self.basis) + [list(v)], self.ambient_rank) == self

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Integer coordinates of a lattice vector v with respect to ``basis``."""
        sol = solve_integer(transpose(self.basis, self.ambient_rank), list(v), self.rank) if self.basis else None
        if not self.basis:
            if any(v):
                raise ValueError("%r is not in the zero sublattice" % (v,))
            return ()
        if sol is None:
            raise ValueError("%r is not in the sublattice" % (v,))
        return sol[0]

    def from_coordinates(self, c: Sequence[int]) -> Vector:
        if not self.basis:
            return (0,) * self.ambient_rank
        return vec_mat(c, self.basis)

    def saturation(self) -> "Sublattice":
        return annihilator(annihilator(self.basis, self.ambient_rank).basis, self.ambient_rank)

    def is_saturated(self) -> bool:
        return self.saturation() == self

    def __add__(self, other: "Sublattice") -> "Sublattice":
        return Sublattice.span(list(self.basis) + list(other.basis), self.ambient_rank)

    def index_factors(self) -> List[int]:
        """Invariant factors of Z^n / self (padded smith diagonal)."""
        return smith_normal_form([list(b) for b in self.basis], self.ambient_rank)


def annihilator(vectors: Iterable[Sequence[int]], ambient_rank: int) -> Sublattice:
    """All dual lattice vectors pairing to zero with every input vector.

    The result is saturated: it is the integer kernel of the matrix with the
    given vectors as rows.
    """
    rows = [list(v) for v in vectors if any(v)]
    for r in rows:
        if len(r) != ambient_rank:
            raise ValueError("vector %r has wrong length for rank %d" % (r, ambient_rank))
    if not rows:
        return Sublattice.full(ambient_rank)
    h, u = hermite_normal_form(transpose(rows))
    kernel = [u[i] for i in range(ambient_rank) if not any(h[i])]
    return Sublattice.span(kernel, ambient_rank)


def is_direct_sum(a: Sublattice, b: Sublattice) -> bool:
    """True iff a and b meet in 0 and together generate the whole lattice."""
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient ranks differ")
    n = a.ambient_rank
    if a.rank + b.rank != n:
        return False
    factors = smith_normal_form([list(v) for v in a.basis + b.basis], n)
    return all(f == 1 for f in factors)


def is_unimodular_basis_part(vectors: Sequence[Sequence[int]], ambient_rank: int) -> bool:
    """True iff the vectors extend to a basis of Z^ambient_rank."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return True
    k = len(vecs)
    factors = smith_normal_form(vecs, ambient_rank)
    return all(f == 1 for f in factors[:k])
