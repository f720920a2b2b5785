from __future__ import annotations

import itertools

import pytest

from clawfano.census import census, e3_classes, exact_census
from clawfano.errors import DimensionCapError, MatroidError
from clawfano.matroid import Matroid, is_full_rank
from clawfano.recognition import is_claw_fano_free, is_k_even

from conftest import brute_isomorphic


def test_census_dim3_covers_all_ground_sets():
    recs = list(census(3))
    assert sum(r.orbit_size for r in recs) == 128
    assert sum(r.orbit_size for r in census(4)) == 32768


def test_census_filter_matches_direct_filter():
    recs = list(census(3, ["claw_fano_free", "full_rank"]))
    direct = [b for b in range(128)
              if is_full_rank(Matroid.from_bits(3, b)) and is_claw_fano_free(Matroid.from_bits(3, b))]
    assert sum(r.orbit_size for r in recs) == len(direct)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_class_counts_match_brute_force(n):
    classes: list[Matroid] = []
    for b in range(1 << ((1 << n) - 1)):
        m = Matroid.from_bits(n, b)
        if not any(brute_isomorphic(m, c) for c in classes):
            classes.append(m)
    assert len(list(census(n))) == len(classes)


@pytest.mark.parametrize("n", [3, 4])
def test_constructive_matches_exact(n):
    exact = sorted(r.representative.bits for r in exact_census(n, ["e3"]))
    assert sorted(m.bits for m in e3_classes(n)) == exact


def test_constructive_classes_are_distinct_and_even():
    from clawfano.recognition import is_isomorphic
    for n in (5, 6):
        cls = e3_classes(n)
        assert all(is_k_even(m, 3) for m in cls)
        for a, b in itertools.combinations(cls, 2):
            assert not is_isomorphic(a, b)


def test_census_is_deterministic():
    a = [(r.representative, r.flags) for r in census(5, mode="constructive")]
    b = [(r.representative, r.flags) for r in census(5, mode="constructive")]
    assert a == b


def test_census_errors():
    with pytest.raises(DimensionCapError):
        list(census(5, mode="exact"))
    with pytest.raises(DimensionCapError):
        e3_classes(8)
    with pytest.raises(MatroidError):
        list(census(3, ["bogus"]))
