"""Decision procedures: induced embeddings, triangle/plane scans, class membership."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from . import kernels
from .errors import DimensionCapError, MatroidError, ProofViolation
from .gf2 import (
    Flat,
    closure,
    enumerate_flats,
    flat_bases_table,
    flat_table,
    gaussian_binomial,
    hyperplane_from_dual,
    reduce_basis,
    span_points,
)
from .matroid import Matroid, format_matroid, linear_image

EXACT_CANON_MAX_DIM = 4
_CHUNK = 200_000


@dataclass(frozen=True)
class InducedEmbedding:
    source_dim: int
    target_dim: int
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return linear_image(x, self.images)

    def is_valid_for(self, n: Matroid, m: Matroid) -> bool:
        """Replay the map on every point: ``phi(x) in E(M)`` iff ``x in E(N)``."""
        if n.dim != self.source_dim or m.dim != self.target_dim:
            return False
        if len(reduce_basis(self.images)) != self.source_dim:
            return False
        return all((self(x) in m.ground) == (x in n.ground) for x in range(1, 1 << n.dim))


class TriangleProfile(NamedTuple):
    c0: int
    c1: int
    c2: int
    c3: int


@dataclass(frozen=True)
class CanonicalForm:
    mode: str  # "exact" or "hash"
    dim: int
    key: tuple


# -- flat scanning ---------------------------------------------------------


def flat_chunks(n: int, d: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(offset, points)`` blocks covering every d-flat in enumeration order."""
    try:
        yield 0, flat_table(n, d)
        return
    except DimensionCapError:
        pass
    buf: list[list[int]] = []
    offset = 0
    for f in enumerate_flats(n, d):
        buf.append(span_points(f.basis))
        if len(buf) == _CHUNK:
            yield offset, np.array(buf, dtype=np.int64)
            offset += len(buf)
            buf = []
    if buf:
        yield offset, np.array(buf, dtype=np.int64)


def flat_at(n: int, d: int, index: int) -> Flat:
    try:
        return Flat(n, tuple(int(b) for b in flat_bases_table(n, d)[index]))
    except DimensionCapError:
        for i, f in enumerate(enumerate_flats(n, d)):
            if i == index:
                return f
    raise IndexError(index)


def intersection_sizes(m: Matroid, d: int) -> np.ndarray:
    """``|F & E|`` for every d-flat ``F`` in enumeration order."""
    if not 0 <= d <= m.dim:
        return np.zeros(0, dtype=np.int64)
    parts = [m.member[pts].sum(axis=1, dtype=np.int64) for _, pts in flat_chunks(m.dim, d)]
    return np.concatenate(parts)


def triangle_profile(m: Matroid) -> TriangleProfile:
    if m.dim < 2:
        return TriangleProfile(0, 0, 0, 0)
    counts = np.bincount(intersection_sizes(m, 2), minlength=4)
    return TriangleProfile(*(int(c) for c in counts))


def plane_histogram(m: Matroid) -> tuple[int, ...]:
    if m.dim < 3:
        return ()
    return tuple(int(c) for c in np.bincount(intersection_sizes(m, 3), minlength=8))


# -- embeddings and isomorphism -------------------------------------------


def _target_labels(labels: np.ndarray) -> np.ndarray:
    out = np.array(labels, dtype=np.uint8)
    out[0] = kernels.SENTINEL
    return out


def find_induced_embedding(n: Matroid, m: Matroid, *, align: tuple[int, int] | None = None):
    """First induced embedding of ``n`` in ``m`` in lexicographic image order, or ``None``.

    ``align=(h_dual_m, h_dual_n)`` additionally requires ``phi(G(N)) & H = phi(H')``
    for the hyperplanes ``H`` of ``m`` and ``H'`` of ``n`` with those duals.
    """
    if n.dim > m.dim:
        return None
    src = np.array(n.member, dtype=np.uint8)
    tgt = np.array(m.member, dtype=np.uint8)
    if align is not None:
        h_m, h_n = align
        if n.dim == 0:
            return InducedEmbedding(0, m.dim, ())
        src[list(hyperplane_from_dual(h_n, n.dim).points)] |= 2
        tgt[list(hyperplane_from_dual(h_m, m.dim).points)] |= 2
    images = kernels.embed_search(src, n.dim, _target_labels(tgt), m.dim)
    if images is None:
        return None
    return InducedEmbedding(n.dim, m.dim, tuple(images))


def has_induced(m: Matroid, n: Matroid) -> bool:
    """Does ``m`` contain ``n`` as an induced restriction?"""
    return find_induced_embedding(n, m) is not None


def point_signatures(m: Matroid) -> np.ndarray:
    """Per point (index = value): in-E flag and counts of triangles through it by E-partners."""
    size = 1 << m.dim
    sig = np.zeros((size, 3), dtype=np.int64)
    sig[:, 0] = m.member
    if m.dim >= 2:
        for _, tri in flat_chunks(m.dim, 2):
            inside = m.member[tri]
            total = inside.sum(axis=1)
            for col in range(3):
                partners = total - inside[:, col]
                np.add.at(sig, (tri[:, col], np.where(partners == 1, 1, 2)), partners > 0)
    return sig


def find_isomorphism(m: Matroid, n: Matroid) -> InducedEmbedding | None:
    """Bijective induced embedding of ``n`` onto ``m``, found with refined point labels."""
    if m.dim != n.dim or m.size != n.size:
        return None
    sm, sn = point_signatures(m), point_signatures(n)
    uniq, inv = np.unique(np.concatenate([sm[1:], sn[1:]]), axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    if len(uniq) >= kernels.SENTINEL:
        lab_m, lab_n = np.array(m.member), np.array(n.member)
    else:
        k = (1 << m.dim) - 1
        lab_m = np.concatenate([[0], inv[:k]]).astype(np.uint8)
        lab_n = np.concatenate([[0], inv[k:]]).astype(np.uint8)
        if not np.array_equal(np.sort(lab_m[1:]), np.sort(lab_n[1:])):
            return None
    images = kernels.embed_search(lab_n, n.dim, _target_labels(lab_m), m.dim)
    if images is None:
        return None
    return InducedEmbedding(n.dim, m.dim, tuple(images))


def is_isomorphic(m: Matroid, n: Matroid) -> bool:
    return find_isomorphism(m, n) is not None


# -- class recognition -----------------------------------------------------


def recognize_bose_burton(m: Matroid) -> int | None:
    """Order ``k`` if the complement of ``E`` is a flat of codimension ``k``, else ``None``."""
    if triangle_profile(m).c1:
        return None
    missing = [p for p in range(1, 1 << m.dim) if p not in m.ground]
    flat = closure(missing, m.dim)
    if len(flat) != len(missing):
        raise ProofViolation("no triangle meets E once, yet G - E is not a flat", format_matroid(m))
    return m.dim - flat.dim


def is_affine_span(m: Matroid) -> bool:
    """Direct test: ``cl(E) - E`` is a hyperplane of ``cl(E)`` (``E`` nonempty)."""
    if m.size == 0:
        return False
    span = closure(m.elements, m.dim)
    rest = [p for p in span.points if p not in m.ground]
    return m.size == 1 << (span.dim - 1) and len(closure(rest, m.dim)) == len(rest)


def find_claw_or_fano(m: Matroid) -> tuple[Flat, str] | None:
    """First plane carrying an induced I3 or F7, with its kind."""
    if m.dim < 3:
        return None
    for offset, planes in flat_chunks(m.dim, 3):
        inside = m.member[planes]
        counts = inside.sum(axis=1)
        xor = np.bitwise_xor.reduce(planes * inside, axis=1)
        bad = (counts == 7) | ((counts == 3) & (xor != 0))
        hits = np.flatnonzero(bad)
        if hits.size:
            i = int(hits[0])
            kind = "F7" if counts[i] == 7 else "I3"
            return flat_at(m.dim, 3, offset + i), kind
    return None


def claw_fano_kinds(m: Matroid) -> tuple[bool, bool]:
    """``(has induced I3, has induced F7)``."""
    if m.dim < 3:
        return False, False
    i3 = f7 = False
    for _, planes in flat_chunks(m.dim, 3):
        inside = m.member[planes]
        counts = inside.sum(axis=1)
        xor = np.bitwise_xor.reduce(planes * inside, axis=1)
        i3 = i3 or bool(np.any((counts == 3) & (xor != 0)))
        f7 = f7 or bool(np.any(counts == 7))
        if i3 and f7:
            break
    return i3, f7


def is_claw_fano_free(m: Matroid) -> bool:
    return find_claw_or_fano(m) is None


def recognize_affine_span(m: Matroid) -> bool:
    """Triangle-free with no induced I3; then ``(E, cl(E))`` is checked to be affine.

    The empty matroid is reported ``False``: its span is not an affine geometry.
    """
    if m.size == 0:
        return False
    if triangle_profile(m).c3:
        return False
    if m.dim >= 3:
        for _, planes in flat_chunks(m.dim, 3):
            inside = m.member[planes]
            counts = inside.sum(axis=1)
            xor = np.bitwise_xor.reduce(planes * inside, axis=1)
            if np.any((counts == 3) & (xor != 0)):
                return False
    if not is_affine_span(m):
        raise ProofViolation("claw-free triangle-free matroid whose span is not affine", format_matroid(m))
    return True


def four_circuit_criterion(m: Matroid) -> bool:
    """Triangle-free, and every three elements lie in a four-element circuit."""
    pts = m.elements
    ground = m.ground
    if any((a ^ b) in ground for i, a in enumerate(pts) for b in pts[i + 1 :]):
        return False
    for i, a in enumerate(pts):
        for j in range(i + 1, len(pts)):
            ab = a ^ pts[j]
            for c in pts[j + 1 :]:
                if (ab ^ c) not in ground:
                    return False
    return True


def is_k_even(m: Matroid, k: int) -> bool:
    """Every exactly-k-dimensional induced restriction has even size."""
    if k < 2:
        raise MatroidError("k-evenness needs k >= 2")
    if k > m.dim:
        return True
    for _, flats in flat_chunks(m.dim, k):
        if np.any(m.member[flats].sum(axis=1) & 1):
            return False
    return True


def is_k_even_all_dims(m: Matroid, k: int) -> bool:
    """Definition check: every induced restriction of dimension at least k is even."""
    if k < 2:
        raise MatroidError("k-evenness needs k >= 2")
    for d in range(k, m.dim + 1):
        for f in enumerate_flats(m.dim, d):
            if sum(1 for p in span_points(f.basis) if p in m.ground) % 2:
                return False
    return True


def is_even_plane(m: Matroid) -> bool:
    return is_k_even(m, 3)


# -- canonical forms -------------------------------------------------------


def gl_generators(n: int) -> list[tuple[int, ...]]:
    """Basis images of a generating set of GL(n, 2)."""
    if n < 2:
        return []
    ident = [1 << i for i in range(n)]
    transvection = [0b11] + ident[1:]
    swap = [2, 1] + ident[2:]
    cycle = ident[1:] + ident[:1]
    return [tuple(transvection), tuple(swap), tuple(cycle)]


def _mask_maps(n: int, images: tuple[int, ...]) -> np.ndarray:
    """Image of every ground-set bitmask under the point permutation induced by ``images``."""
    npts = (1 << n) - 1
    perm = [linear_image(p, images) for p in range(1, npts + 1)]
    masks = np.arange(1 << npts, dtype=np.int64)
    out = np.zeros_like(masks)
    for j in range(npts):
        out |= ((masks >> j) & 1) << (perm[j] - 1)
    return out


@lru_cache(maxsize=None)
def orbit_min_table(n: int) -> np.ndarray:
    """For each ground-set bitmask of PG(n-1,2), the least bitmask in its GL(n,2) orbit."""
    if n > EXACT_CANON_MAX_DIM:
        raise DimensionCapError(f"exact canonical forms are limited to dimension {EXACT_CANON_MAX_DIM}")
    maps = [_mask_maps(n, g) for g in gl_generators(n)]
    canon = np.arange(1 << ((1 << n) - 1), dtype=np.int64)
    while True:
        new = canon
        for mp in maps:
            new = np.minimum(new, new[mp])
        new = new[new]
        if np.array_equal(new, canon):
            break
        canon = new
    canon.flags.writeable = False
    return canon


def canonical_form(m: Matroid, mode: str = "exact") -> CanonicalForm:
    if mode == "exact":
        if m.dim > EXACT_CANON_MAX_DIM:
            raise DimensionCapError(f"exact canonical form refused above dimension {EXACT_CANON_MAX_DIM}")
        return CanonicalForm("exact", m.dim, (int(orbit_min_table(m.dim)[m.bits]),))
    if mode == "hash":
        return CanonicalForm("hash", m.dim, invariant_key(m))
    raise MatroidError(f"unknown canonical mode {mode!r}")


def invariant_key(m: Matroid) -> tuple:
    """Isomorphism invariants: size, triangle profile, plane histogram, point-signature multiset."""
    sig = point_signatures(m)[1:]
    rows, counts = np.unique(sig, axis=0, return_counts=True)
    sig_key = tuple((tuple(int(v) for v in r), int(c)) for r, c in zip(rows, counts))
    return (m.size, tuple(triangle_profile(m)), plane_histogram(m), sig_key)


def num_triangles(n: int) -> int:
    return gaussian_binomial(n, 2)
