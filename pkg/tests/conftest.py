from __future__ import annotations

import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from clawfano.gf2 import enumerate_flats, reduce_basis, span_points
from clawfano.matroid import Matroid, linear_image

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def matroids(draw, min_dim: int = 0, max_dim: int = 5) -> Matroid:
    n = draw(st.integers(min_dim, max_dim))
    bits = draw(st.integers(0, (1 << ((1 << n) - 1)) - 1))
    return Matroid.from_bits(n, bits)


@st.composite
def invertible_maps(draw, n: int) -> tuple[int, ...]:
    if n == 0:
        return ()
    images = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=n, max_size=n))
    if len(reduce_basis(images)) != n:
        images = [1 << i for i in range(n)]
    return tuple(images)


def brute_chi(m: Matroid) -> int:
    """Largest flat of G missing E, by plain enumeration."""
    for d in range(m.dim, -1, -1):
        for f in enumerate_flats(m.dim, d):
            if not any(p in m.ground for p in span_points(f.basis)):
                return m.dim - d
    raise AssertionError("the empty flat always avoids E")


def all_invertible(n: int):
    for images in itertools.product(range(1, 1 << n), repeat=n):
        if len(reduce_basis(images)) == n:
            yield images


def brute_isomorphic(a: Matroid, b: Matroid) -> bool:
    if a.dim != b.dim or a.size != b.size:
        return False
    target = set(b.elements)
    return any({linear_image(p, g) for p in a.elements} == target for g in all_invertible(a.dim))


@pytest.fixture
def brute():
    return {"chi": brute_chi, "iso": brute_isomorphic}
