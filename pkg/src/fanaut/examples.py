"""Standard smooth complete fans, random smooth fans, and synthetic spherical data."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_linalg import Vector, identity, matmul, transpose
from .fan import Fan
from .spherical import SphericalData


def projective_space(n: int) -> Fan:
    """ℙⁿ: rays e_1..e_n and -(e_1+...+e_n), named X1..X(n+1)."""
    rays = {"X%d" % (i + 1): tuple(int(i == j) for j in range(n)) for i in range(n)}
    rays["X%d" % (n + 1)] = tuple(-1 for _ in range(n))
    names = sorted(rays, key=lambda s: int(s[1:]))
    return Fan(n, rays, tuple(frozenset(c) for c in combinations(names, n)))


def hirzebruch(a: int) -> Fan:
    """F_a with rays (1,0), (0,1), (-1,a), (0,-1)."""
    rays = {"X1": (1, 0), "X2": (0, 1), "X3": (-1, a), "X4": (0, -1)}
    cones = [("X1", "X2"), ("X2", "X3"), ("X3", "X4"), ("X4", "X1")]
    return Fan(2, rays, tuple(frozenset(c) for c in cones))


def product(f: Fan, g: Fan, left: str = "A", right: str = "B") -> Fan:
    n, m = f.ambient_rank, g.ambient_rank
    rays = {left + k: tuple(v) + (0,) * m for k, v in f.rays.items()}
    rays.update({right + k: (0,) * n + tuple(v) for k, v in g.rays.items()})
    cones = [
        frozenset(left + x for x in a) | frozenset(right + y for y in b)
        for a in f.maximal_cones() for b in g.maximal_cones()
    ]
    return Fan(n + m, rays, tuple(cones))


def star_subdivide(f: Fan, cone: Sequence[str], name: str) -> Fan:
    """Blow up the orbit closure of ``cone``: add the ray through the sum of its rays."""
    cone = frozenset(cone)
    v = tuple(sum(f.rays[x][i] for x in cone) for i in range(f.ambient_rank))
    rays = dict(f.rays)
    rays[name] = v
    out = []
    for m in f.maximal_cones():
        if cone <= m:
            out.extend((m - {x}) | {name} for x in cone)
        else:
            out.append(m)
    return Fan(f.ambient_rank, rays, tuple(out))


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> Tuple[List[List[int]], List[List[int]]]:
    """(U, U^{-T}) built from random elementary operations with small entries."""
    u = identity(n)
    inv_t = identity(n)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        # row_i += c row_j on U; the inverse transpose gets row_j -= c row_i
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        inv_t[j] = [a - c * b for a, b in zip(inv_t[j], inv_t[i])]
    if n and rng.random() < 0.5:
        k = rng.randrange(n)
        u[k] = [-x for x in u[k]]
        inv_t[k] = [-x for x in inv_t[k]]
    return u, inv_t


def random_smooth_complete_fan(rng: random.Random, max_rank: int = 4, max_blowups: int = 3,
                               max_rays: int = 10) -> Fan:
    """Iterated star subdivisions of ℙⁿ, products of projective spaces, or F_a,
    followed by a random change of lattice basis."""
    n = rng.randint(1, max_rank)
    kind = rng.random()
    if n == 2 and kind < 0.3:
        f = hirzebruch(rng.randint(0, 3))
    elif n >= 2 and kind < 0.6:
        k = rng.randint(1, n - 1)
        f = product(projective_space(k), projective_space(n - k))
    else:
        f = projective_space(n)
    for i in range(rng.randint(0, max_blowups)):
        if len(f.rays) >= max_rays:
            break
        cones = [c for c in f.all_cones if len(c) >= 2]
        if not cones:
            break
        c = rng.choice(cones)
        f = star_subdivide(f, sorted(c), "S%d" % (i + 1))
    u, _ = random_unimodular(rng, n)
    f = f.transformed(u)
    names = sorted(f.rays)
    mapping = {k: "R%d" % (i + 1) for i, k in enumerate(names)}
    return f.renamed(mapping)


# ---------------------------------------------------------------------------
# synthetic spherical instances


def synthetic_rank2(with_color: bool = False) -> SphericalData:
    """Σ = {(1,0)}, boundary E1 = (-1,0), D2 = (0,1), D3 = (0,-1); optionally the color Z1 = (1,0)."""
    colors = {"Z1": (1, 0)} if with_color else {}
    return SphericalData.build(
        2, {"s1": (1, 0)}, colors,
        {"E1": (-1, 0), "D2": (0, 1), "D3": (0, -1)},
        [["E1", "D2"], ["E1", "D3"]],
    )


def synthetic_rank3() -> SphericalData:
    """Two spherical roots, two nℓ-divisors and a ℙ¹ of ℓ-divisors."""
    return SphericalData.build(
        3, {"s1": (1, 0, 0), "s2": (0, 1, 0)}, {"Z1": (1, 0, 0), "Z2": (0, 1, 0)},
        {"E1": (-1, 0, 0), "E2": (0, -1, 0), "D3": (0, 0, 1), "D4": (0, 0, -1)},
        [["E1", "E2", "D3"], ["E1", "E2", "D4"]],
    )


def synthetic_fiber_p1xp1() -> SphericalData:
    """Fiber ℙ¹×ℙ¹ with colors Z1 = (1,0,0), Z2 = (1,1,0): one root pair of the fiber survives."""
    return SphericalData.build(
        3, {"s1": (1, 0, 0)}, {"Z1": (1, 0, 0), "Z2": (1, 1, 0)},
        {"E1": (-1, 0, 0), "D2": (0, 1, 0), "D3": (0, -1, 0), "D4": (0, 0, 1), "D5": (0, 0, -1)},
        [["E1", a, b] for a in ("D2", "D3") for b in ("D4", "D5")],
    )


def random_spherical(rng: random.Random, max_rank: int = 4, scramble: bool = True) -> SphericalData:
    """Random toroidal data: σ_i = e_i, E_i = -e_i + w_i with w_i in the ℓ-part,
    a random smooth complete fan on the ℓ-part, colors e_i; then a change of basis."""
    r = rng.randint(1, max_rank)
    k = rng.randint(1, r)
    m = r - k
    if m:
        ell = random_smooth_complete_fan(rng, max_rank=m, max_blowups=2, max_rays=8)
        while ell.ambient_rank != m:
            ell = random_smooth_complete_fan(rng, max_rank=m, max_blowups=2, max_rays=8)
    else:
        ell = Fan(0, {}, (frozenset(),))
    rays: Dict[str, Vector] = {}
    for i in range(k):
        w = [rng.randint(-1, 1) for _ in range(m)]
        rays["E%d" % (i + 1)] = tuple(-int(j == i) for j in range(k)) + tuple(w)
    for name, v in ell.rays.items():
        rays["D" + name] = (0,) * k + tuple(v)
    es = frozenset("E%d" % (i + 1) for i in range(k))
    cones = [es | frozenset("D" + x for x in c) for c in ell.maximal_cones()]
    sigma = {"s%d" % (i + 1): tuple(int(j == i) for j in range(r)) for i in range(k)}
    colors = {"Z%d" % (i + 1): tuple(int(j == i) for j in range(r)) for i in range(k)}
    sd = SphericalData.build(r, sigma, colors, rays, cones)
    if not scramble:
        return sd
    u, inv_t = random_unimodular(rng, r)
    from .exact_linalg import mat_vec

    return SphericalData.build(
        r,
        {n: mat_vec(inv_t, s) for n, s in sigma.items()},
        {n: mat_vec(u, v) for n, v in colors.items()},
        {n: mat_vec(u, v) for n, v in rays.items()},
        cones,
    )


def toric_as_spherical(f: Fan) -> SphericalData:
    """A toric fan as spherical data with Σ = ∅ and no colors."""
    return SphericalData(f.ambient_rank, {}, {}, (), Fan(f.ambient_rank, f.rays, f.cones, None))


def corpus_fans() -> Dict[str, Fan]:
    return {
        "p1": projective_space(1),
        "p2": projective_space(2),
        "p3": projective_space(3),
        "p4": projective_space(4),
        "p1xp1": product(projective_space(1), projective_space(1)),
        "f0": hirzebruch(0),
        "f1": hirzebruch(1),
        "f2": hirzebruch(2),
        "f3": hirzebruch(3),
    }


def corpus_spherical() -> Dict[str, SphericalData]:
    return {
        "synthetic": synthetic_rank2(False),
        "synthetic_linear": synthetic_rank2(True),
        "synthetic_rank3": synthetic_rank3(),
        "fiber_p1xp1": synthetic_fiber_p1xp1(),
    }
