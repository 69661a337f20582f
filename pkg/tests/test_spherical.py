import pytest

from fanaut.examples import synthetic_rank3
from fanaut.exact_linalg import Sublattice
from fanaut.fan import FanFormatError
from fanaut.spherical import (
    DecompositionFails,
    NotMovable,
    PreconditionError,
    SphericalData,
    classify_boundary,
    lambda_decomposition,
    nonlinear_restrict,
    sigma_of_moved,
    validate_spherical,
    wonderful_closure_lattice,
)

RAYS = {"E1": (-1, 0), "D2": (0, 1), "D3": (0, -1)}
CONES = [["E1", "D2"], ["E1", "D3"]]


def test_json_roundtrip(synthetic):
    again = SphericalData.from_json(synthetic.to_json())
    assert again.to_json() == synthetic.to_json()
    assert again.fan.support.inequalities == ((-1, 0),)
    with pytest.raises(FanFormatError):
        SphericalData.from_json({"rank": 2, "sigma": {"s": [1]}, "fan": {"rays": {}, "cones": []}})


def test_validate(synthetic):
    assert validate_spherical(synthetic) == []
    dep = SphericalData.build(2, {"a": (1, 0), "b": (2, 0)}, {}, RAYS, CONES)
    assert "sigma_dependent" in {v.kind for v in validate_spherical(dep)}


def test_classify_boundary(synthetic):
    assert classify_boundary(synthetic) == (frozenset({"D2", "D3"}), frozenset({"E1"}))
    toric = SphericalData.build(2, {}, {}, {"A": (1, 0), "B": (0, 1), "C": (-1, -1)}, [["A", "B"], ["B", "C"], ["A", "C"]])
    assert classify_boundary(toric)[1] == frozenset()
    wonderful = SphericalData.build(1, {"s": (1,)}, {}, {"E": (-1,)}, [["E"]])
    assert classify_boundary(wonderful) == (frozenset(), frozenset({"E"}))


def test_sigma_of_moved(synthetic):
    assert sigma_of_moved(synthetic, ["E1"]) == {"E1": "s1"}
    assert sigma_of_moved(synthetic, []) == {}
    doubled = SphericalData.build(2, {"s1": (1, 0)}, {}, {"E1": (-2, 0), "D2": (0, 1), "D3": (0, -1)}, CONES)
    with pytest.raises(NotMovable) as exc:
        sigma_of_moved(doubled, ["E1"])
    assert exc.value.name == "E1" and "-2" in str(exc.value)
    with pytest.raises(PreconditionError):
        sigma_of_moved(synthetic, ["D2"])


def test_lambda_decomposition(synthetic):
    dec = lambda_decomposition(synthetic, ["E1"])
    assert dec.rho_perp.basis == ((0, 1),)
    assert dec.lambda_moved.basis == ((1, 0),)
    assert dec.direct
    empty = lambda_decomposition(synthetic, [])
    assert empty.rho_perp == Sublattice.full(2) and empty.lambda_moved.rank == 0


def test_perturbed_data_is_rejected():
    bad = SphericalData.build(2, {"s1": (1, 0)}, {}, {"E1": (-1, 0), "D2": (1, 1), "D3": (0, -1)}, CONES)
    with pytest.raises((NotMovable, DecompositionFails)):
        lambda_decomposition(bad, ["E1"])


def test_decomposition_direct_after_validation():
    # once every moved ray pairs to -δ with the σ's, v + Σ⟨ρ(E),v⟩σ_E lies in ρ(𝓔)^⊥,
    # so validated data always splits
    sd = synthetic_rank3()
    for moved in (["E1"], ["E2"], ["E1", "E2"]):
        dec = lambda_decomposition(sd, moved)
        assert dec.direct and dec.rho_perp.rank + dec.lambda_moved.rank == 3


def test_nonlinear_synthetic(synthetic):
    res = nonlinear_restrict(synthetic, ["D2", "D3"])
    assert res.lambda_A.basis == ((0, 1),)
    assert all(res.checks.values()), res.checks
    new = res.data.fan
    assert new.ambient_rank == 1
    assert new.rays == {"D2": (1,), "D3": (-1,)}
    assert res.data.sigma is None


def test_nonlinear_identity(synthetic):
    res = nonlinear_restrict(synthetic, ["E1", "D2", "D3"])
    assert res.lambda_A == Sublattice.full(2)
    assert res.data.fan.rays == synthetic.fan.rays
    assert set(res.data.fan.all_cones) == set(synthetic.fan.all_cones)


def test_nonlinear_guard(synthetic):
    with pytest.raises(PreconditionError):
        nonlinear_restrict(synthetic, ["E1", "D2"])


def test_nonlinear_rank3():
    sd = synthetic_rank3()
    res = nonlinear_restrict(sd, ["D3", "D4"])
    assert all(res.checks.values())
    assert res.data.fan.ambient_rank == 1
    part = nonlinear_restrict(sd, ["E2", "D3", "D4"])
    assert all(part.checks.values())
    assert part.data.fan.ambient_rank == 2
    # the remaining spherical root still cuts out a half-plane
    assert part.data.fan.support.dim == 2 and len(part.data.fan.support.inequalities) == 1


def test_wonderful_closure():
    one = SphericalData.build(2, {"s": (1, 0)}, {}, RAYS, CONES)
    w = wonderful_closure_lattice(one)
    assert w.xi.basis == ((1, 0),) and w.quotient_factors == (0,)
    basis = SphericalData.build(2, {"a": (1, 0), "b": (0, 1)}, {}, {"A": (-1, 0), "B": (0, -1)}, [["A", "B"]])
    assert wonderful_closure_lattice(basis).invariant_factors == (1, 1)
    two = SphericalData.build(2, {"s": (2, 0)}, {}, RAYS, CONES)
    w = wonderful_closure_lattice(two)
    assert w.xi.basis == ((2, 0),) and w.invariant_factors == (2, 0)
