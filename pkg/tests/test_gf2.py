from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clawfano.errors import MatroidError
from clawfano.gf2 import (
    Flat,
    PointSet,
    apex_partition_of_span,
    closure,
    dual_of_hyperplane,
    enumerate_flats,
    flat_bases_table,
    flat_table,
    gaussian_binomial,
    hyperplane_from_dual,
    is_circuit,
    orthogonal_complement,
    point_add,
    rank,
    reduce_basis,
    span_points,
)


def test_point_add_is_xor():
    assert point_add(3, 5, 3) == 6
    assert point_add(7, 7, 3) == 0


def test_point_add_rejects_out_of_range():
    with pytest.raises(MatroidError):
        point_add(8, 1, 3)


def test_gaussian_binomial_small_values():
    assert [gaussian_binomial(4, k) for k in range(5)] == [1, 15, 35, 15, 1]
    assert gaussian_binomial(3, 2) == 7
    assert gaussian_binomial(2, 3) == 0


@pytest.mark.parametrize("n", range(0, 6))
def test_flat_counts_match_gaussian_binomials(n):
    for d in range(n + 1):
        assert sum(1 for _ in enumerate_flats(n, d)) == gaussian_binomial(n, d)


@pytest.mark.parametrize("n,d", [(3, 1), (4, 2), (5, 3), (5, 2), (6, 3)])
def test_flat_table_matches_enumeration_order(n, d):
    bases = [f.basis for f in enumerate_flats(n, d)]
    assert [tuple(int(x) for x in row) for row in flat_bases_table(n, d)] == bases
    pts = flat_table(n, d)
    assert [sorted(int(x) for x in row) for row in pts] == [sorted(span_points(b)) for b in bases]


def test_flat_canonical_form_is_unique():
    assert Flat.span(3, [3, 5]) == Flat.span(3, [6, 5]) == Flat.span(3, [3, 6])
    with pytest.raises(MatroidError):
        Flat(3, (3, 6))  # not reduced


def test_flat_coords_lift_roundtrip():
    f = Flat.span(5, [3, 12, 17])
    for p in f.points:
        assert f.lift(f.coords(p)) == p
    with pytest.raises(MatroidError):
        f.coords(1)


def test_closure_and_rank():
    assert closure([1, 2], 3).points == (1, 2, 3)
    assert rank([1, 2, 3], 3) == 2
    assert closure(PointSet.from_points(3, [1, 2, 4])).dim == 3


def test_circuits():
    assert is_circuit([1, 2, 3])
    assert is_circuit([1, 2, 4, 7])
    assert not is_circuit([1, 2, 4])
    assert not is_circuit([1, 2, 3, 4, 7])  # dependent but not minimal
    with pytest.raises(MatroidError):
        is_circuit([])


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, (1 << n) - 1))))
def test_hyperplane_dual_roundtrip(nu):
    n, u = nu
    h = hyperplane_from_dual(u, n)
    assert h.dim == n - 1
    assert all(bin(u & p).count("1") % 2 == 0 for p in h.points)
    assert dual_of_hyperplane(h) == u


@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(1, (1 << n) - 1), max_size=n))))
def test_orthogonal_complement_dimension(nv):
    n, vecs = nv
    f = Flat.span(n, vecs)
    perp = orthogonal_complement(f)
    assert perp.dim == n - f.dim
    assert all(bin(a & b).count("1") % 2 == 0 for a in f.basis for b in perp.basis)


def test_reduce_basis_is_rref():
    assert reduce_basis([7, 3, 1]) == (1, 2, 4)
    assert reduce_basis([3, 3]) == (3,)


def test_apex_partition_of_span():
    f = Flat.span(3, [1, 2])
    apex, base, shifted = apex_partition_of_span(f, 4)
    assert list(apex) == [4]
    assert list(base) == [1, 2, 3]
    assert list(shifted) == [5, 6, 7]
    with pytest.raises(MatroidError):
        apex_partition_of_span(f, 3)


@pytest.mark.parametrize("n", range(1, 7))
def test_each_point_lies_in_2_pow_n_minus_1_minus_1_hyperplanes(n):
    hyperplanes = list(enumerate_flats(n, n - 1))
    assert len(hyperplanes) == 2 ** n - 1
    for p in range(1, 2 ** n):
        through = sum(1 for h in hyperplanes if p in h)
        assert through == 2 ** (n - 1) - 1
