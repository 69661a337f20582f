"""Shared drivers for the property and acceptance suites.

Each driver returns a mapping from property name to the violations found; an
empty list means the property holds on every instance.  Results are cached so
the acceptance run and the property tests share one pass over the random fans.
"""

import random
from functools import lru_cache
from itertools import combinations

from fanaut.demazure import check_independent, check_triple, demazure_roots, oracle_bound, phi, positive_system, roots_oracle
from fanaut.exact_linalg import rank
from fanaut.examples import corpus_fans, corpus_spherical, random_smooth_complete_fan, random_spherical
from fanaut.fan import is_complete, is_smooth, is_valid
from fanaut.linear_case import linear_colored_fan, linear_levi_invariants, phi_containment_check, sigma_preservation_check
from fanaut.spherical import classify_boundary, lambda_decomposition, nonlinear_restrict
from fanaut.toric_levi import (
    check_abelian_orthogonality,
    check_color_independence,
    check_colors_in_cones,
    check_empty_color_face,
    check_horospherical,
    colored_fan,
    colored_fans_isomorphic,
    levi_invariants,
)

N_RANDOM = 500
SEED = 20241019
ORACLE_EVERY = 10  # box-scan oracle on every 10th random fan
SUBSET_LIMIT = 4  # all subsets when there are at most 2**SUBSET_LIMIT


def random_fans():
    rng = random.Random(SEED)
    return [random_smooth_complete_fan(rng, max_rank=4) for _ in range(N_RANDOM)]


def stable_subsets(names, rng, exhaustive=False):
    names = sorted(names)
    if exhaustive or len(names) <= SUBSET_LIMIT:
        return [list(c) for k in range(len(names) + 1) for c in combinations(names, k)]
    picks = [names, []]
    while len(picks) < 2 + SUBSET_LIMIT:
        picks.append(sorted(rng.sample(names, rng.randint(1, len(names) - 1))))
    return picks


def nonzero_dependent(colors):
    """Whether the dependence survives after dropping zero functionals."""
    vecs = [v for v in colors.values() if any(v)]
    return bool(vecs) and rank(vecs) < len(vecs)


def second_functional(rng, n):
    return tuple(rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(n))


def check_fan(f, rng, exhaustive=False, oracle=False):
    """All toric properties of one fan over its stable subsets."""
    out = []
    if not (is_valid(f) and is_smooth(f) and is_complete(f)):
        return [{"check": "generator", "fan": f.to_json()}]
    roots = demazure_roots(f)
    if oracle and roots != roots_oracle(f, oracle_bound(f)):
        out.append({"check": "oracle", "fan": f.to_json()})
    for v in check_triple(roots):
        out.append(dict(v, check="triple"))
    for stable in stable_subsets(f.rays, rng, exhaustive):
        rd = positive_system(phi(roots, stable, f.rays))
        inv = levi_invariants(f, rd)
        cf = colored_fan(f, rd, inv)
        tag = {"fan": f.to_json(), "stable": stable}
        for name, viol in [
            ("independent", check_independent(rd, f)),
            ("abelian", check_abelian_orthogonality(f, rd, inv)),
            ("empty_color_face", check_empty_color_face(f, rd, cf, inv)),
            ("color_independence", [dict(v, nonzero_dependent=nonzero_dependent(inv.colors_A))
                                    for v in check_color_independence(inv)]),
            ("colors_in_cones", check_colors_in_cones(cf)),
        ]:
            out.extend(dict(tag, check=name, detail=v) for v in viol)
        if not check_horospherical(cf):
            out.append(dict(tag, check="horospherical"))
        if rd.phi:
            other = positive_system(rd, second_functional(rng, f.ambient_rank))
            cf2 = colored_fan(f, other, levi_invariants(f, other))
            if not colored_fans_isomorphic(cf, cf2):
                out.append(dict(tag, check="positivity_invariance"))
    return out


TORIC_PROPERTIES = ("generator", "oracle", "triple", "independent", "abelian", "empty_color_face",
                    "horospherical", "color_independence", "colors_in_cones", "positivity_invariance")


def group(records, names):
    out = {k: [] for k in names}
    for r in records:
        out.setdefault(r["check"], []).append(r)
    return out


@lru_cache(maxsize=None)
def toric_property_violations():
    rng = random.Random(SEED + 1)
    out = []
    fans = list(corpus_fans().values())
    for f in fans:
        out.extend(check_fan(f, rng, exhaustive=True, oracle=True))
    for i, f in enumerate(random_fans()):
        out.extend(check_fan(f, rng, oracle=i % ORACLE_EVERY == 0))
    return group(out, TORIC_PROPERTIES)


def random_spherical_instances(n=40):
    rng = random.Random(SEED + 2)
    return [random_spherical(rng) for _ in range(n)]


NONLINEAR_PROPERTIES = ("direct_sum", "faces", "join", "s_star_injective", "valid", "smooth", "complete",
                        "ell_preserved")


def check_nonlinear(sd, stable):
    """Direct sum, join per moved divisor, smooth+complete and ℓ-preservation."""
    res = nonlinear_restrict(sd, stable)
    moved = sorted(set(sd.fan.rays) - set(stable))
    out = [{"check": k, "stable": sorted(stable)} for k, ok in res.checks.items() if not ok]
    if not lambda_decomposition(sd, moved).direct:
        out.append({"check": "direct_sum", "stable": sorted(stable)})
    return out


@lru_cache(maxsize=None)
def nonlinear_violations():
    out = []
    for sd in list(corpus_spherical().values()) + random_spherical_instances():
        ell, nell = classify_boundary(sd)
        nl = sorted(nell)
        for k in range(len(nl) + 1):
            for keep in combinations(nl, k):
                out.extend(check_nonlinear(sd, sorted(ell) + list(keep)))
    return group(out, NONLINEAR_PROPERTIES)


LINEAR_PROPERTIES = ("phi_containment", "sigma_preserved")


@lru_cache(maxsize=None)
def linear_violations():
    out = []
    for sd in random_spherical_instances():
        ell, nell = classify_boundary(sd)
        for stable in (sorted(nell), sorted(nell) + sorted(ell)[:1], sorted(nell | ell)):
            if not phi_containment_check(sd, stable)["ok"]:
                out.append({"check": "phi_containment", "stable": stable})
            inv = linear_levi_invariants(sd, stable)
            cf = linear_colored_fan(sd, stable, inv=inv)
            if not sigma_preservation_check(sd, cf, inv.lambda_A):
                out.append({"check": "sigma_preserved", "stable": stable})
    return group(out, LINEAR_PROPERTIES)
