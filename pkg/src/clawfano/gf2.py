"""Exact GF(2) linear algebra on points of PG(n-1, 2).

A point is a nonzero integer ``p`` with ``1 <= p < 2**n``; bit ``i`` of ``p``
is coordinate ``i``. Sums are XOR. The zero vector is never a point; where an
operation can produce it we return :data:`ZERO`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionCapError, MatroidError

MAX_DIM = 24
ZERO = 0  # the distinguished zero marker; never a valid Point

# flat tables above this many stored points are refused (stream instead)
_TABLE_BUDGET = 60_000_000


def check_dim(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise MatroidError(f"dimension must be a non-negative integer, got {n!r}")
    if n > MAX_DIM:
        raise DimensionCapError(f"dimension {n} exceeds cap {MAX_DIM}")
    return int(n)


def check_point(p: int, n: int) -> int:
    if not 1 <= p < (1 << n):
        raise MatroidError(f"{p!r} is not a point of PG({n - 1},2)")
    return int(p)


def point_add(x: int, y: int, n: int) -> int:
    """Vector sum of two points; :data:`ZERO` exactly when ``x == y``."""
    check_point(x, n)
    check_point(y, n)
    return x ^ y


def popcount(x: int) -> int:
    return bin(x).count("1")


def dot(u: int, v: int) -> int:
    return popcount(u & v) & 1


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class PointSet:
    """Subset of the points of PG(n-1,2); bit ``p - 1`` of ``bits`` marks point ``p``."""

    ambient_dim: int
    bits: int = 0

    def __post_init__(self):
        check_dim(self.ambient_dim)
        object.__setattr__(self, "bits", int(self.bits))
        if self.bits < 0 or self.bits >> ((1 << self.ambient_dim) - 1):
            raise MatroidError("bitset has points outside the geometry")

    @classmethod
    def from_points(cls, n: int, points: Iterable[int]) -> "PointSet":
        bits = 0
        for p in points:
            p = check_point(int(p), n)
            bits |= 1 << (p - 1)
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "PointSet":
        return cls(n, (1 << ((1 << n) - 1)) - 1)

    def __contains__(self, p: int) -> bool:
        return p > 0 and (self.bits >> (p - 1)) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length()
            bits ^= low

    def __len__(self) -> int:
        return popcount(self.bits)

    def __repr__(self) -> str:
        return f"PointSet({self.ambient_dim}, {sorted(self)})"


def span_points(basis: Sequence[int]) -> list[int]:
    """All nonzero combinations of ``basis`` in binary-counter order.

    Entry ``j - 1`` is the sum of ``basis[i]`` over the set bits ``i`` of ``j``.
    """
    pts = [0]
    for b in basis:
        pts += [p ^ b for p in pts]
    return pts[1:]


def reduce_basis(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row-echelon basis of the span, pivot = leading bit, pivots ascending."""
    piv: dict[int, int] = {}
    for v in vectors:
        while v:
            hb = v.bit_length() - 1
            if hb in piv:
                v ^= piv[hb]
            else:
                piv[hb] = v
                break
    order = sorted(piv)
    for idx, p in enumerate(order):
        row = piv[p]
        for lower in order[:idx]:
            if (row >> lower) & 1:
                row ^= piv[lower]
        piv[p] = row
    return tuple(piv[p] for p in order)


@dataclass(frozen=True)
class Flat:
    """A flat of PG(n-1,2), stored as its canonical reduced echelon basis.

    Two flats are equal iff their representations are equal.
    """

    ambient_dim: int
    basis: tuple[int, ...] = ()

    def __post_init__(self):
        check_dim(self.ambient_dim)
        for b in self.basis:
            check_point(b, self.ambient_dim)
        if reduce_basis(self.basis) != tuple(self.basis):
            raise MatroidError("basis is not in canonical reduced echelon form")

    @classmethod
    def span(cls, n: int, vectors: Iterable[int]) -> "Flat":
        vectors = list(vectors)
        for v in vectors:
            check_point(v, n)
        return cls(n, reduce_basis(vectors))

    @classmethod
    def full(cls, n: int) -> "Flat":
        return cls(n, tuple(1 << i for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(b.bit_length() - 1 for b in self.basis)

    @cached_property
    def points(self) -> tuple[int, ...]:
        return tuple(sorted(span_points(self.basis)))

    @cached_property
    def pointset(self) -> PointSet:
        return PointSet.from_points(self.ambient_dim, self.points)

    def __contains__(self, p: int) -> bool:
        if p <= 0:
            return False
        for b, pv in zip(reversed(self.basis), reversed(self.pivots)):
            if (p >> pv) & 1:
                p ^= b
        return p == 0

    def __len__(self) -> int:
        return (1 << self.dim) - 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.points)

    def coords(self, p: int) -> int:
        """Coordinates of ``p`` in this flat's basis, as an integer of ``dim`` bits."""
        if p not in self:
            raise MatroidError(f"{p} is not in the flat")
        c = 0
        for i, pv in enumerate(self.pivots):
            c |= ((p >> pv) & 1) << i
        return c

    def lift(self, c: int) -> int:
        """Inverse of :meth:`coords`: the combination of basis vectors selected by ``c``."""
        p = 0
        i = 0
        while c:
            if c & 1:
                p ^= self.basis[i]
            c >>= 1
            i += 1
        return p

    def issubset(self, other: "Flat") -> bool:
        return all(b in other for b in self.basis)

    def __repr__(self) -> str:
        return f"Flat(n={self.ambient_dim}, basis={list(self.basis)})"


def closure(points: Iterable[int], n: int | None = None) -> Flat:
    """Smallest flat containing ``points`` (a PointSet or an iterable with ``n`` given)."""
    if isinstance(points, PointSet):
        n = points.ambient_dim
    if n is None:
        raise MatroidError("ambient dimension required")
    return Flat.span(n, points)


def rank(points: Iterable[int], n: int | None = None) -> int:
    return closure(points, n).dim


def is_circuit(points: Iterable[int], n: int | None = None) -> bool:
    """Minimal nonempty set summing to zero."""
    pts = list(points)
    if not pts:
        raise MatroidError("a circuit test needs a nonempty set")
    if len(set(pts)) != len(pts):
        return False
    total = 0
    for p in pts:
        total ^= p
    if total:
        return False
    # exactly one dependency, and it is the whole set
    return len(reduce_basis(pts)) == len(pts) - 1


def hyperplane_from_dual(u: int, n: int) -> Flat:
    """The hyperplane ``{x : <u, x> = 0}``."""
    check_dim(n)
    check_point(u, n)
    lo = (u & -u).bit_length() - 1
    gens = []
    for i in range(n):
        if i == lo:
            continue
        gens.append((1 << i) | (1 << lo) if (u >> i) & 1 else 1 << i)
    return Flat(n, reduce_basis(gens))


def orthogonal_complement(flat: Flat) -> Flat:
    """The flat of dual vectors annihilating every point of ``flat``."""
    n = flat.ambient_dim
    pivots = set(flat.pivots)
    gens = []
    for f in range(n):
        if f in pivots:
            continue
        v = 1 << f
        for b, pv in zip(flat.basis, flat.pivots):
            if (b >> f) & 1:
                v |= 1 << pv
        gens.append(v)
    return Flat(n, reduce_basis(gens))


def dual_of_hyperplane(h: Flat) -> int:
    """Inverse of :func:`hyperplane_from_dual`."""
    if h.dim != h.ambient_dim - 1:
        raise MatroidError(f"flat of dimension {h.dim} is not a hyperplane of a {h.ambient_dim}-dim geometry")
    (u,) = orthogonal_complement(h).basis
    return u


def apex_partition_of_span(flat: Flat, w: int) -> tuple[PointSet, PointSet, PointSet]:
    """Split ``cl(F + w)`` into ``{w}``, ``F`` and ``F + w``."""
    n = flat.ambient_dim
    check_point(w, n)
    if w in flat:
        raise MatroidError(f"apex {w} lies in the flat")
    return (
        PointSet.from_points(n, [w]),
        flat.pointset,
        PointSet.from_points(n, [p ^ w for p in flat.points]),
    )


def _rref_bases(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """Canonical bases of all d-flats, lexicographic in the basis tuple."""

    def rec(prefix: tuple[int, ...], pivots: tuple[int, ...]):
        i = len(prefix)
        if i == d:
            yield prefix
            return
        lo = pivots[-1] + 1 if pivots else 0
        for p in range(lo, n - (d - i) + 1):
            free = [q for q in range(p) if q not in pivots]
            for c in range(1 << len(free)):
                row = 1 << p
                for k, q in enumerate(free):
                    if (c >> k) & 1:
                        row |= 1 << q
                yield from rec(prefix + (row,), pivots + (p,))

    yield from rec((), ())


def enumerate_flats(n: int, d: int) -> Iterator[Flat]:
    """Every d-dimensional flat of PG(n-1,2) exactly once, lexicographic on the basis."""
    check_dim(n)
    if not 0 <= d <= n:
        raise MatroidError(f"flat dimension {d} out of range for n={n}")
    for basis in _rref_bases(n, d):
        yield Flat(n, basis)


def _deposit(counter: np.ndarray, positions: Sequence[int]) -> np.ndarray:
    out = np.zeros_like(counter)
    for k, q in enumerate(positions):
        out |= ((counter >> k) & 1) << q
    return out


@lru_cache(maxsize=64)
def flat_bases_table(n: int, d: int) -> np.ndarray:
    """Array of shape ``([n d]_2, d)``: canonical bases in :func:`enumerate_flats` order."""
    check_dim(n)
    count = gaussian_binomial(n, d)
    if count * max(1, (1 << d) - 1) > _TABLE_BUDGET:
        raise DimensionCapError(f"table of {count} flats of dim {d} in PG({n - 1},2) is too large")
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    blocks = []
    for pivots in itertools.combinations(range(n), d):
        rows = []
        for i, p in enumerate(pivots):
            free = [q for q in range(p) if q not in pivots[:i]]
            rows.append((1 << p) | _deposit(np.arange(1 << len(free), dtype=np.int64), free))
        grids = np.meshgrid(*rows, indexing="ij")
        blocks.append(np.stack([g.ravel() for g in grids], axis=1))
    table = np.concatenate(blocks)
    if d * n <= 62:
        key = np.zeros(table.shape[0], dtype=np.int64)
        for i in range(d):
            key = (key << n) | table[:, i]
        order = np.argsort(key, kind="stable")
    else:
        order = np.lexsort(tuple(table[:, i] for i in reversed(range(d))))
    table = np.ascontiguousarray(table[order])
    table.flags.writeable = False
    return table


@lru_cache(maxsize=64)
def flat_table(n: int, d: int) -> np.ndarray:
    """Points of every d-flat, shape ``(count, 2**d - 1)``, rows as :func:`flat_bases_table`.

    Column ``j - 1`` holds the combination selected by the bits of ``j``.
    """
    bases = flat_bases_table(n, d)
    pts = np.zeros((bases.shape[0], 1 << d), dtype=np.int64)
    for i in range(d):
        w = 1 << i
        pts[:, w : 2 * w] = pts[:, :w] ^ bases[:, i : i + 1]
    out = np.ascontiguousarray(pts[:, 1:])
    out.flags.writeable = False
    return out
