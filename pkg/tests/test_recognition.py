from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clawfano.errors import DimensionCapError, MatroidError
from clawfano.gf2 import closure, hyperplane_from_dual
from clawfano.matroid import (
    Matroid,
    ag_circ,
    affine_geometry,
    bose_burton,
    doubling,
    empty,
    fano,
    independent,
    k5,
    p5,
    projective_geometry,
    relabel,
)
from clawfano.recognition import (
    canonical_form,
    claw_fano_kinds,
    find_claw_or_fano,
    find_induced_embedding,
    find_isomorphism,
    four_circuit_criterion,
    has_induced,
    is_affine_span,
    is_claw_fano_free,
    is_isomorphic,
    is_k_even,
    is_k_even_all_dims,
    orbit_min_table,
    plane_histogram,
    recognize_affine_span,
    recognize_bose_burton,
    triangle_profile,
)

from conftest import all_invertible, brute_isomorphic, invertible_maps, matroids


def test_triangle_profiles():
    assert tuple(triangle_profile(fano())) == (0, 0, 0, 7)
    ag = triangle_profile(affine_geometry(3))
    assert ag.c3 == 0 and ag.c1 == 0
    assert tuple(triangle_profile(independent(3))) == (1, 3, 3, 0)


def test_plane_histogram_counts_all_planes():
    assert sum(plane_histogram(k5())) == 15
    assert plane_histogram(k5())[7] == 0


def test_recognize_bose_burton_examples():
    assert recognize_bose_burton(bose_burton(5, 2)) == 2
    assert recognize_bose_burton(p5()) is None
    for n in range(1, 6):
        assert recognize_bose_burton(projective_geometry(n)) == n
    assert recognize_bose_burton(empty(3)) == 0


def test_recognize_affine_span_examples():
    assert recognize_affine_span(affine_geometry(4))
    assert not recognize_affine_span(independent(3))
    assert not recognize_affine_span(empty(3))


@given(matroids(min_dim=1, max_dim=5))
def test_affine_recognition_agrees_with_direct_test(m):
    if m.size == 0:
        return
    assert recognize_affine_span(m) == four_circuit_criterion(m)
    if triangle_profile(m).c3 == 0 and not claw_fano_kinds(m)[0]:
        assert is_affine_span(m)


def test_k_even_examples():
    assert is_k_even(k5(), 3)
    assert not is_k_even(fano(), 3)
    for n in range(1, 9):
        assert is_k_even(affine_geometry(n), 3)
    assert is_k_even(independent(2), 3)  # vacuous
    with pytest.raises(MatroidError):
        is_k_even(k5(), 1)


@given(matroids(max_dim=5), st.integers(2, 4))
def test_exact_evenness_equals_all_dims(m, k):
    assert is_k_even(m, k) == is_k_even_all_dims(m, k)


@given(matroids(max_dim=5))
def test_two_even_matroids_are_empty_or_affine(m):
    if is_k_even(m, 2):
        assert m.size == 0 or is_affine_span(m)


def test_claw_fano_examples():
    assert is_claw_fano_free(ag_circ(3))
    assert not is_claw_fano_free(independent(3))
    assert not is_claw_fano_free(fano())
    plane, kind = find_claw_or_fano(fano())
    assert kind == "F7" and plane.dim == 3
    assert find_claw_or_fano(independent(3))[1] == "I3"


@given(matroids(min_dim=3, max_dim=5))
def test_plane_scan_agrees_with_embedding_search(m):
    i3, f7 = claw_fano_kinds(m)
    assert i3 == has_induced(m, independent(3))
    assert f7 == has_induced(m, fano())
    assert is_claw_fano_free(m) == (not i3 and not f7)


def test_embedding_examples():
    assert find_induced_embedding(independent(3), fano()) is None
    emb = find_induced_embedding(k5(), k5())
    assert emb.images == (1, 2, 4, 8)
    assert not has_induced(k5(), independent(3))
    assert has_induced(projective_geometry(4), fano())


def test_embedding_replays():
    from clawfano.structure import chibound_witness
    m = chibound_witness(6)
    emb = find_induced_embedding(k5(), m)
    assert emb is not None and emb.is_valid_for(k5(), m)


def test_aligned_embedding_respects_hyperplanes():
    m = doubling(k5())
    emb = find_induced_embedding(k5(), m, align=(16, 8))
    assert emb is not None
    h, hp = hyperplane_from_dual(16, 5), hyperplane_from_dual(8, 4)
    for x in range(1, 16):
        assert (emb(x) in h) == (x in hp)


@given(matroids(max_dim=3), st.data())
def test_isomorphism_matches_brute_force(m, data):
    other = Matroid.from_bits(m.dim, data.draw(st.integers(0, (1 << ((1 << m.dim) - 1)) - 1)))
    assert is_isomorphic(m, other) == brute_isomorphic(m, other)
    iso = find_isomorphism(m, other)
    if iso is not None:
        assert iso.is_valid_for(other, m)


@given(matroids(max_dim=4), st.data())
def test_canonical_form_is_invariant(m, data):
    g = data.draw(invertible_maps(m.dim))
    assert canonical_form(relabel(m, g)) == canonical_form(m)
    if m.dim >= 1:
        assert canonical_form(relabel(m, g), "hash") == canonical_form(m, "hash")


def test_canonical_form_p5_orbit():
    forms = {canonical_form(Matroid.from_points(3, s)) for s in itertools.combinations(range(1, 8), 5)}
    assert forms == {canonical_form(p5())}
    assert canonical_form(fano()) != canonical_form(bose_burton(3, 2))
    with pytest.raises(DimensionCapError):
        canonical_form(Matroid.from_points(5, [1]))


@pytest.mark.parametrize("n", [2, 3])
def test_orbit_table_matches_group_sweep(n):
    table = orbit_min_table(n)
    npts = (1 << n) - 1
    group = list(all_invertible(n))
    for mask in range(1 << npts):
        m = Matroid.from_bits(n, mask)
        assert table[mask] == min(relabel(m, g).bits for g in group)


def test_orbit_counts_dim4():
    import numpy as np
    assert len(np.unique(orbit_min_table(4))) == 46
