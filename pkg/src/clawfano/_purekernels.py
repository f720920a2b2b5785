"""Pure-Python search kernels; same contract as the compiled ``_speedups`` module."""

from __future__ import annotations

import sys

SENTINEL = 255


def find_flat_in(allowed, n: int, d: int):
    """Basis of the first ``d``-flat whose points all have ``allowed[p] != 0``.

    ``allowed`` is indexed by point value and has length ``2**n``. Flats are
    visited through their greedy-minimum bases (each basis vector is the least
    point of the flat outside the span of the earlier ones), so each flat is
    examined once, in increasing lexicographic order of that basis. Returns
    ``None`` when no such flat exists.
    """
    if d == 0:
        return []
    allowed = bytes(allowed)
    size = 1 << n
    cand = [y for y in range(1, size) if allowed[y]]
    if len(cand) < (1 << d) - 1:
        return None
    basis: list[int] = []
    span = [0]

    def rec(cand: list[int], inset: set[int]) -> bool:
        i = len(basis)
        need = (1 << d) - (1 << i)
        stop = len(cand) - need
        for k, y in enumerate(cand):
            if k > stop:
                break
            if any(y ^ s < y for s in span):
                continue
            if i + 1 == d:
                basis.append(y)
                return True
            nxt = [z for z in cand[k + 1 :] if (z ^ y) in inset]
            if len(nxt) < (1 << d) - (1 << (i + 1)):
                continue
            basis.append(y)
            span.extend([s ^ y for s in span])
            if rec(nxt, set(nxt)):
                return True
            del span[len(span) // 2 :]
            basis.pop()
        return False

    # the candidate sets shrink by one level per call; depth <= d <= 24
    if d + 50 > sys.getrecursionlimit():
        sys.setrecursionlimit(d + 100)
    return list(basis) if rec(cand, set(cand)) else None


def embed_search(src_lab, ns: int, tgt_lab, nt: int):
    """Lexicographically first injective linear map preserving point labels.

    ``src_lab`` (length ``2**ns``) and ``tgt_lab`` (length ``2**nt``) give a
    label per point; ``tgt_lab[0]`` must be :data:`SENTINEL` and no source
    point may carry it, which also enforces injectivity. The map is returned
    as the images of the source basis vectors, or ``None``.
    """
    if ns == 0:
        return []
    src = bytes(src_lab)
    tgt = bytes(tgt_lab)
    if tgt[0] != SENTINEL:
        raise ValueError("target label of the zero vector must be the sentinel")
    size = 1 << nt
    level_cands = [[y for y in range(1, size) if tgt[y] == src[1 << i]] for i in range(ns)]
    span = [0] * (1 << ns)
    images: list[int] = []

    def rec(i: int) -> bool:
        if i == ns:
            return True
        half = 1 << i
        for y in level_cands[i]:
            for j in range(1, half):
                if tgt[y ^ span[j]] != src[half | j]:
                    break
            else:
                for j in range(half):
                    span[half | j] = y ^ span[j]
                images.append(y)
                if rec(i + 1):
                    return True
                images.pop()
        return False

    return list(images) if rec(0) else None
