"""Critical number: the least codimension of a flat avoiding the ground set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import MatroidError
from .gf2 import Flat, PointSet, closure, hyperplane_from_dual, reduce_basis
from .matroid import Matroid, is_full_rank
from .recognition import is_claw_fano_free


@dataclass(frozen=True)
class ChiResult:
    chi: int
    witness: Flat  # a flat of dimension dim(M) - chi disjoint from E


@dataclass(frozen=True)
class ApexPartition:
    b0: PointSet
    b1: PointSet
    b2: PointSet
    hyperplane: Flat
    apex: int


_memo: dict[tuple[int, int], ChiResult] = {}


def _greedy_empty_flat(allowed: np.ndarray, n: int) -> list[int]:
    basis: list[int] = []
    span = [0]
    for y in range(1, 1 << n):
        if allowed[y] and all(allowed[y ^ s] for s in span):
            basis.append(y)
            span += [s ^ y for s in span]
    return basis


def max_empty_flat(m: Matroid) -> Flat:
    """A maximum-dimension flat of ``G`` disjoint from ``E``.

    A greedy pass gives a feasible dimension; the exhaustive search then asks
    for one more dimension at a time, so exactly one search fails.
    """
    allowed = np.array(m.member, dtype=np.uint8) ^ 1
    allowed[0] = 0
    n = m.dim
    best = _greedy_empty_flat(allowed, n)
    ceiling = (int(allowed.sum()) + 1).bit_length() - 1  # 2**d - 1 <= |G - E|
    for d in range(len(best) + 1, ceiling + 1):
        found = kernels.find_flat_in(allowed, n, d)
        if found is None:
            break
        best = found
    return Flat(n, reduce_basis(best))


def critical_number(m: Matroid, *, memo: bool = False) -> ChiResult:
    key = (m.dim, m.bits)
    if memo and key in _memo:
        return _memo[key]
    flat = max_empty_flat(m)
    res = ChiResult(m.dim - flat.dim, flat)
    if memo:
        _memo[key] = res
    return res


def chi(m: Matroid) -> int:
    return critical_number(m).chi


def apex_partition(m: Matroid, h_dual: int, w: int) -> ApexPartition:
    """Split the hyperplane ``H`` by how many of ``{x, x + w}`` lie in ``E``."""
    h = hyperplane_from_dual(h_dual, m.dim)
    if w in m.ground:
        raise MatroidError(f"apex {w} is an element of the matroid")
    if w in h:
        raise MatroidError(f"apex {w} lies in the hyperplane")
    blocks: list[list[int]] = [[], [], []]
    for x in h.points:
        blocks[(x in m.ground) + ((x ^ w) in m.ground)].append(x)
    b0, b1, b2 = (PointSet.from_points(m.dim, b) for b in blocks)
    return ApexPartition(b0, b1, b2, h, w)


def is_affine_in(block: PointSet, h: Flat) -> bool:
    """``(B, H)`` is an affine geometry of dimension ``dim(H)``: ``H - B`` is a hyperplane of ``H``."""
    if h.dim == 0 or len(block) != 1 << (h.dim - 1):
        return False
    rest = [x for x in h.points if x not in block]
    return len(closure(rest, h.ambient_dim)) == len(rest)


def check_technical_lemma(m: Matroid, w: int, h_dual: int, *, check_pre: bool = True) -> str:
    """Verdict for the apex-partition lemma on one ``(M, w, H)``.

    Returns ``"vacuous"`` when ``B1`` or ``B2`` is empty, ``"B2"`` or ``"B1"``
    for the block that is an affine geometry on ``H``, and ``"violated"`` if
    neither is.
    """
    if check_pre:
        if not is_full_rank(m):
            raise MatroidError("matroid is not full-rank")
        if not is_claw_fano_free(m):
            raise MatroidError("matroid has an induced I3 or F7")
    part = apex_partition(m, h_dual, w)
    if not len(part.b1) or not len(part.b2):
        return "vacuous"
    if is_affine_in(part.b2, part.hyperplane):
        return "B2"
    if is_affine_in(part.b1, part.hyperplane):
        return "B1"
    return "violated"
