from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clawfano.errors import MatroidError
from clawfano.gf2 import Flat, hyperplane_from_dual
from clawfano.matroid import (
    DoublingStep,
    Matroid,
    SemidoublingStep,
    ag_circ,
    affine_geometry,
    apply_step,
    bose_burton,
    complement,
    doubling,
    empty,
    fano,
    format_matroid,
    independent,
    is_doubling_apex,
    is_full_rank,
    k5,
    p5,
    parse_matroid,
    projective_geometry,
    relabel,
    restrict,
    semidoubling,
    semidoubling_by_dual,
    twist_decompose,
    twist_doubling,
)
from clawfano.recognition import is_isomorphic

from conftest import invertible_maps, matroids


def test_named_constructor_sizes():
    assert (k5().dim, k5().size) == (4, 10)
    assert (fano().dim, fano().size) == (3, 7)
    for n in range(1, 7):
        assert bose_burton(n, 1) == affine_geometry(n)
        assert affine_geometry(n).size == 2 ** (n - 1)
    assert ag_circ(3).size == 5 and p5().size == 5
    assert independent(4).size == 4
    assert projective_geometry(4).size == 15


def test_constructor_errors():
    with pytest.raises(MatroidError):
        bose_burton(3, 4)
    with pytest.raises(MatroidError):
        ag_circ(1)
    with pytest.raises(MatroidError):
        Matroid.from_points(2, [4])


def test_restrict_fano_to_triangle():
    tri = Flat.span(3, [1, 6])
    r = restrict(fano(), tri)
    assert r.dim == 2 and r.size == 3
    assert restrict(k5(), Flat.full(4)) == k5()


def test_complement_examples():
    assert complement(projective_geometry(3)) == empty(3)
    assert complement(empty(3)) == projective_geometry(3)
    comp = complement(affine_geometry(4))
    assert set(comp.elements) == set(hyperplane_from_dual(1, 4).points)


def test_full_rank_examples():
    assert is_full_rank(independent(3))
    assert not is_full_rank(Matroid.from_points(2, [1]))
    assert is_full_rank(fano())


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (4, 2), (5, 3), (2, 0)])
def test_doubling_of_bose_burton(n, k):
    assert doubling(bose_burton(n, k)) == bose_burton(n + 1, k)


@given(matroids(max_dim=5))
def test_doubling_doubles_size(m):
    d = doubling(m)
    assert d.size == 2 * m.size
    assert restrict(d, hyperplane_from_dual(1 << m.dim, m.dim + 1)) == m


@given(matroids(max_dim=4), st.data())
def test_twist_size_and_empty_case(m, data):
    n = Matroid.from_bits(m.dim, data.draw(st.integers(0, (1 << ((1 << m.dim) - 1)) - 1)))
    t = twist_doubling(m, n)
    assert t.size == m.size + len(set(m.elements) ^ set(n.elements))
    assert twist_doubling(m, empty(m.dim)) == doubling(m)
    assert twist_doubling(m, m).elements == m.elements


def test_semidoubling_of_empty_is_affine_shift():
    h = hyperplane_from_dual(1, 3)
    s = semidoubling(empty(3), h)
    assert set(s.elements) == {8 ^ x for x in range(1, 8) if x not in h}


@given(matroids(min_dim=1, max_dim=5), st.data())
def test_twist_decompose_roundtrips(m, data):
    u = data.draw(st.integers(1, (1 << m.dim) - 1))
    s = semidoubling_by_dual(m, u)
    w = 1 << m.dim
    pair = twist_decompose(s, w, w)
    assert pair.m == m
    assert set(pair.n_twist.elements) == {x for x in range(1, 1 << m.dim) if x not in hyperplane_from_dual(u, m.dim)}
    assert pair.rebuild() == s
    d = twist_decompose(doubling(m), w, w)
    assert d.n_twist.size == 0


def test_twist_decompose_on_doubled_fano():
    pair = twist_decompose(doubling(fano()), 8, 8)
    assert pair.n_twist.size == 0 and pair.m == fano()


def test_twist_decompose_rejects_apex_in_ground():
    with pytest.raises(MatroidError):
        twist_decompose(projective_geometry(3), 1, 4)


@given(matroids(min_dim=1, max_dim=5), st.data())
def test_twist_decompose_general_apex(m, data):
    if m.size == (1 << m.dim) - 1:
        return
    w = data.draw(st.sampled_from([x for x in range(1, 1 << m.dim) if x not in m.ground]))
    u = data.draw(st.sampled_from([v for v in range(1, 1 << m.dim) if bin(v & w).count("1") & 1]))
    assert twist_decompose(m, w, u).rebuild() == m


def test_apply_step_validates():
    m = p5()
    assert apply_step(m, DoublingStep(8)) == doubling(m)
    assert apply_step(m, SemidoublingStep(8, 3)) == semidoubling_by_dual(m, 3)
    with pytest.raises(MatroidError):
        apply_step(m, DoublingStep(4))
    with pytest.raises(MatroidError):
        apply_step(m, SemidoublingStep(8, 8))


def test_doubling_apex_test():
    assert is_doubling_apex(doubling(p5()), 8)
    assert not is_doubling_apex(semidoubling_by_dual(p5(), 1), 8)


@given(matroids(max_dim=4), st.data())
def test_relabel_preserves_isomorphism_class(m, data):
    g = data.draw(invertible_maps(m.dim))
    assert is_isomorphic(relabel(m, g), m)


def test_two_doublings_are_isomorphic():
    a = doubling(p5())
    # double at a different apex: the new point 8 + 1 instead of 8
    b = Matroid.from_points(4, list(p5().elements) + [9 ^ x for x in p5().elements])
    assert a != b and is_isomorphic(a, b)


def test_interchange_roundtrip():
    text = format_matroid(k5())
    assert parse_matroid(text) == k5()
    assert parse_matroid("# comment\ndim: 3\nelements: 1, 2, 4\n") == independent(3)
    assert parse_matroid(format_matroid(empty(2))) == empty(2)
    with pytest.raises(MatroidError):
        parse_matroid("dim 3\n")
    with pytest.raises(MatroidError):
        parse_matroid("dim 2\nelements 1 1\n")
