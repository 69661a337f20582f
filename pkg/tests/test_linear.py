import pytest

from fanaut.demazure import demazure_roots, phi, positive_system
from fanaut.examples import corpus_fans, projective_space, synthetic_fiber_p1xp1, synthetic_rank2, toric_as_spherical
from fanaut.exact_linalg import Sublattice
from fanaut.linear_case import (
    UnboundedSearch,
    ell_lattice,
    fiber_fan,
    image_region,
    linear_colored_fan,
    linear_levi_invariants,
    phi_containment_check,
    restricted_roots,
    sigma_preservation_check,
)
from fanaut.spherical import PreconditionError
from fanaut.toric_levi import ColoredFan, a_orbit_poset, colored_fan, levi_invariants


def cones_of(cf):
    return {(c.cone.generators, tuple(sorted(c.colors))) for c in cf.cones}


def test_fiber_fan():
    sd = synthetic_rank2(True)
    fib = fiber_fan(sd)
    assert ell_lattice(sd).basis == ((0, 1),)
    assert fib.rays == {"D2": (1,), "D3": (-1,)}
    toric = toric_as_spherical(projective_space(2))
    assert fiber_fan(toric).rays == projective_space(2).rays
    assert fiber_fan(synthetic_fiber_p1xp1()).ambient_rank == 2


def test_restricted_roots():
    rr = restricted_roots(synthetic_rank2(True), ["E1"])
    assert rr.R == ((-1,), (1,)) and rr.phi == rr.R
    assert rr.violations == ()
    assert rr.moved_by((1,)) == {"D3"} and rr.moved_by((-1,)) == {"D2"}
    # the colour Z1 rules out translates along (1, 0)
    assert rr.candidates == (((0, -1), "D2", (-1,)), ((0, 1), "D3", (1,)))


def test_unbounded_without_color():
    with pytest.raises(UnboundedSearch):
        restricted_roots(synthetic_rank2(False), ["E1"])


def test_moving_nl_divisor_is_rejected():
    with pytest.raises(PreconditionError):
        restricted_roots(synthetic_rank2(True), ["D2", "D3"])


def test_containment():
    chk = phi_containment_check(synthetic_rank2(True), ["E1"])
    assert chk["ok"] and not chk["strict"]
    chk = phi_containment_check(synthetic_fiber_p1xp1(), ["E1"])
    assert chk["ok"] and chk["strict"]
    assert chk["phi"] == [[0, -1], [0, 1]]
    assert len(chk["fiber_phi"]) == 4


def test_invariants_synthetic():
    sd = synthetic_rank2(True)
    inv = linear_levi_invariants(sd, ["E1"])
    assert inv.lambda_A.basis == ((1, 0),)
    assert inv.colors_A == {"Z1": (1,), "D2": (0,)}
    assert inv.pa_roots == ()
    cf = linear_colored_fan(sd, ["E1"], inv=inv)
    assert cones_of(cf) == {((), ()), (((-1,),), ())}
    assert sigma_preservation_check(sd, cf, inv.lambda_A)
    assert len(a_orbit_poset(cf)) == 2


def test_sigma_preservation_negative_control():
    sd = synthetic_rank2(True)
    inv = linear_levi_invariants(sd, ["E1"])
    cf = linear_colored_fan(sd, ["E1"], inv=inv)
    assert image_region(sd, inv.lambda_A).inequalities == ((-1,),)
    dropped = ColoredFan(cf.rank, tuple(c for c in cf.cones if c.cone.dim == 0), cf.color_functionals)
    assert not sigma_preservation_check(sd, dropped, inv.lambda_A)


def test_fiber_p1xp1_invariants():
    sd = synthetic_fiber_p1xp1()
    inv = linear_levi_invariants(sd, ["E1"])
    assert inv.lambda_A.basis == ((1, 0, 0), (0, 1, 0))
    assert inv.colors_A == {"Z1": (1, 0), "Z2": (1, 1), "D4": (0, 0)}
    cf = linear_colored_fan(sd, ["E1"], inv=inv)
    assert sigma_preservation_check(sd, cf, inv.lambda_A)
    assert {c.cone.generators for c in cf.maximal()} == {((-1, 0), (0, -1)), ((-1, 0), (0, 1))}


@pytest.mark.parametrize("name", sorted(corpus_fans()))
def test_toric_degeneration(name):
    # with Σ = ∅ every boundary divisor is ℓ and the linear output is the toric one
    f = corpus_fans()[name]
    sd = toric_as_spherical(f)
    names = sorted(f.rays)
    for stable in (names, names[1:], names[:1], []):
        rd = positive_system(phi(demazure_roots(f), stable, f.rays))
        toric = colored_fan(f, rd, levi_invariants(f, rd))
        lin = linear_colored_fan(sd, stable)
        assert lin == toric
        assert lin.source == toric.source


def test_toric_degeneration_invariants(p2):
    sd = toric_as_spherical(p2)
    inv = linear_levi_invariants(sd, ["X3"], (-1, 0))
    assert inv.lambda_A.basis == ((0, 1),)
    assert inv.colors_A == {"X2": (1,)}
    assert inv.ell == Sublattice.full(2)
