from itertools import combinations
from math import gcd

from hypothesis import given, settings
from hypothesis import strategies as st

from fanaut.exact_linalg import (
    Sublattice,
    annihilator,
    det,
    dot,
    hermite_normal_form,
    is_direct_sum,
    matmul,
    rank,
    smith_normal_form,
    solve_integer,
)


def minors_gcd(m, k):
    """gcd of all k×k minors: the k-th determinantal divisor."""
    g = 0
    rows, cols = len(m), len(m[0])
    for r in combinations(range(rows), k):
        for c in combinations(range(cols), k):
            g = gcd(g, det([[m[i][j] for j in c] for i in r]))
    return g


def smith_oracle(m):
    """Invariant factors from determinantal divisors d_k / d_{k-1}."""
    rows, cols = len(m), len(m[0])
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        d = minors_gcd(m, k)
        if d == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            break
        out.append(d // prev)
        prev = d
    return out + [0] * (cols - min(rows, cols))


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_hnf_example():
    h, u = hermite_normal_form([[2, 4], [1, 1]])
    assert h == [[1, 1], [0, 2]]
    assert matmul(u, [[2, 4], [1, 1]]) == h
    assert abs(det(u)) == 1


def test_hnf_identity_and_zero():
    h, u = hermite_normal_form([[1, 0], [0, 1]])
    assert h == [[1, 0], [0, 1]] and u == [[1, 0], [0, 1]]
    h, _ = hermite_normal_form([[0, 0], [0, 0]])
    assert h == [[0, 0], [0, 0]]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_hnf_transform(m):
    h, u = hermite_normal_form(m)
    assert matmul(u, m) == h
    assert abs(det(u)) == 1
    assert rank(h) == rank(m)


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[0, 0]]) == [0, 0]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_determinantal_divisors(m):
    assert smith_normal_form(m) == smith_oracle(m)


def test_annihilator_examples():
    assert annihilator([(1, 0)], 2).basis == ((0, 1),)
    assert annihilator([], 2) == Sublattice.full(2)
    assert annihilator([(-1, -1), (1, 0)], 2).rank == 0


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_annihilator_is_saturated_kernel(m):
    n = len(m[0])
    a = annihilator(m, n)
    assert a.rank == n - rank(m)
    assert all(dot(r, b) == 0 for r in m for b in a.basis)
    assert a.is_saturated()


def test_direct_sum_examples():
    assert is_direct_sum(Sublattice.span([(1, 0)], 2), Sublattice.span([(0, 1)], 2))
    assert not is_direct_sum(Sublattice.span([(1, 0)], 2), Sublattice.span([(1, 2)], 2))
    assert is_direct_sum(Sublattice.span([(0, -1)], 2), Sublattice.span([(-1, 1)], 2))


def test_solve_integer():
    x0, kernel = solve_integer([[2, 4]], [6], 2)
    assert 2 * x0[0] + 4 * x0[1] == 6
    assert len(kernel) == 1 and 2 * kernel[0][0] + 4 * kernel[0][1] == 0
    assert solve_integer([[2, 4]], [3], 2) is None


def test_sublattice_coordinates_roundtrip():
    lat = Sublattice.span([(1, 1, 0), (0, 2, 1)], 3)
    v = (3, 7, 2)
    c = lat.coordinates(v)
    assert lat.from_coordinates(c) == v
    assert lat.contains(v) and not lat.contains((1, 0, 0))
