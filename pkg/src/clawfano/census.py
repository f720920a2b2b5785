"""Isomorphism-class enumeration of small binary matroids.

Exact mode (``n <= 4``) walks every ground set of ``PG(n-1,2)`` and keeps
one representative per GL(n,2) orbit. Constructive mode (``n <= 7``) grows
the even plane classes dimension by dimension: every member of E_3 is a
doubling or semidoubling of one of its hyperplane restrictions, so applying
all such steps to the previous dimension's classes reaches every class.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .critical import critical_number
from .errors import DimensionCapError, MatroidError
from .matroid import Matroid, doubling, is_full_rank, semidoubling_by_dual
from .recognition import (
    EXACT_CANON_MAX_DIM,
    CanonicalForm,
    canonical_form,
    find_claw_or_fano,
    is_isomorphic,
    is_k_even,
    orbit_min_table,
    recognize_bose_burton,
)

log = logging.getLogger(__name__)

CONSTRUCTIVE_MAX_DIM = 7
FILTERS = ("full_rank", "e3", "claw_fano_free")


@dataclass(frozen=True)
class CensusFlags:
    full_rank: bool
    e3: bool
    claw_fano_free: bool
    bb_order: int | None
    chi: int


@dataclass(frozen=True)
class CensusRecord:
    canonical: CanonicalForm
    representative: Matroid
    flags: CensusFlags
    orbit_size: int | None = None  # ground sets in the class (exact mode only)


def flags_of(m: Matroid) -> CensusFlags:
    return CensusFlags(
        full_rank=is_full_rank(m),
        e3=is_k_even(m, 3),
        claw_fano_free=find_claw_or_fano(m) is None,
        bb_order=recognize_bose_burton(m),
        chi=critical_number(m).chi,
    )


def _check_filters(filters: Iterable[str]) -> tuple[str, ...]:
    out = tuple(filters)
    for f in out:
        if f not in FILTERS:
            raise MatroidError(f"unknown census filter {f!r}; choose from {', '.join(FILTERS)}")
    return out


def _passes(flags: CensusFlags, filters: tuple[str, ...]) -> bool:
    return all(getattr(flags, f) for f in filters)


def exact_census(n: int, filters: Iterable[str] = ()) -> Iterator[CensusRecord]:
    """One record per isomorphism class of ground sets in dimension ``n``."""
    if n > EXACT_CANON_MAX_DIM:
        raise DimensionCapError(f"exact census is limited to dimension {EXACT_CANON_MAX_DIM}")
    filters = _check_filters(filters)
    table = orbit_min_table(n)
    sizes = np.bincount(table, minlength=len(table))
    reps = np.flatnonzero(table == np.arange(len(table)))
    kept = 0
    for bits in reps:
        m = Matroid.from_bits(n, int(bits))
        flags = flags_of(m)
        if not _passes(flags, filters):
            continue
        kept += 1
        yield CensusRecord(canonical_form(m), m, flags, int(sizes[bits]))
    log.info("census dim %d: %d ground sets, %d classes, %d kept", n, len(table), len(reps), kept)


def _seed_classes(n: int) -> list[Matroid]:
    """All isomorphism classes in dimension <= 2 (every one is in E_3)."""
    return [Matroid.from_bits(n, int(b)) for b in np.unique(orbit_min_table(n))]


def _dedup(candidates: Iterable[Matroid]) -> list[Matroid]:
    """Keep one matroid per class, in first-seen order (sorted by canonical key when exact)."""
    exact: dict[int, Matroid] = {}
    buckets: dict[tuple, list[Matroid]] = {}
    out: list[Matroid] = []
    for m in candidates:
        if m.dim <= EXACT_CANON_MAX_DIM:
            key = canonical_form(m).key[0]
            exact.setdefault(key, Matroid.from_bits(m.dim, key))
            continue
        bucket = buckets.setdefault(canonical_form(m, "hash").key, [])
        if not any(is_isomorphic(m, other) for other in bucket):
            bucket.append(m)
            out.append(m)
    return [exact[k] for k in sorted(exact)] + out


def e3_classes(n: int) -> list[Matroid]:
    """Representatives of every isomorphism class of E_3 in dimension ``n``."""
    if n > CONSTRUCTIVE_MAX_DIM:
        raise DimensionCapError(f"constructive census is limited to dimension {CONSTRUCTIVE_MAX_DIM}")
    return list(_e3_levels(n)[n])


_levels: dict[int, list[Matroid]] = {}


def _e3_levels(n: int) -> dict[int, list[Matroid]]:
    for d in range(0, n + 1):
        if d in _levels:
            continue
        if d <= 2:
            _levels[d] = _seed_classes(d)
            continue

        def grow(prev: list[Matroid]) -> Iterator[Matroid]:
            for m in prev:
                yield doubling(m)
                for u in range(1, 1 << m.dim):
                    yield semidoubling_by_dual(m, u)

        _levels[d] = _dedup(grow(_levels[d - 1]))
        log.info("constructive census dim %d: %d classes", d, len(_levels[d]))
    return _levels


def constructive_census(n: int, filters: Iterable[str] = ()) -> Iterator[CensusRecord]:
    filters = _check_filters(filters)
    mode = "exact" if n <= EXACT_CANON_MAX_DIM else "hash"
    for m in e3_classes(n):
        flags = flags_of(m)
        if _passes(flags, filters):
            yield CensusRecord(canonical_form(m, mode), m, flags)


def census(n: int, filters: Iterable[str] = (), mode: str = "auto") -> Iterator[CensusRecord]:
    """Deterministic stream of class records; ``mode`` is ``exact``, ``constructive`` or ``auto``."""
    if mode == "auto":
        mode = "exact" if n <= EXACT_CANON_MAX_DIM else "constructive"
    if mode == "exact":
        return exact_census(n, filters)
    if mode == "constructive":
        return constructive_census(n, filters)
    raise MatroidError(f"unknown census mode {mode!r}")
