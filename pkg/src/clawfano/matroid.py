"""The matroid model ``(E, G)`` and the constructions that grow it.

A :class:`Matroid` of dimension ``n`` is a subset of the points of
PG(n-1,2). Every enlarging construction places its apex on the new top
coordinate ``1 << n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import MatroidError
from .gf2 import (
    Flat,
    PointSet,
    check_dim,
    check_point,
    closure,
    hyperplane_from_dual,
    reduce_basis,
)


@dataclass(frozen=True)
class Matroid:
    dim: int
    ground: PointSet

    def __post_init__(self):
        check_dim(self.dim)
        if self.ground.ambient_dim != self.dim:
            raise MatroidError("ground set lives in a different geometry")

    @classmethod
    def from_points(cls, n: int, points: Iterable[int]) -> "Matroid":
        return cls(n, PointSet.from_points(n, points))

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "Matroid":
        return cls(n, PointSet(n, bits))

    @property
    def bits(self) -> int:
        return self.ground.bits

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(self.ground)

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, p: int) -> bool:
        return p in self.ground

    @property
    def num_points(self) -> int:
        """Number of points of the ambient geometry, ``2**n - 1``."""
        return (1 << self.dim) - 1

    @cached_property
    def member(self) -> np.ndarray:
        """uint8 indicator of length ``2**n`` indexed by point value (entry 0 is the zero vector)."""
        m = np.zeros(1 << self.dim, dtype=np.uint8)
        if self.elements:
            m[list(self.elements)] = 1
        m.flags.writeable = False
        return m

    @cached_property
    def rank(self) -> int:
        return len(reduce_basis(self.elements))

    def __repr__(self) -> str:
        return f"Matroid(dim={self.dim}, elements={list(self.elements)})"


@dataclass(frozen=True)
class DoublingStep:
    w: int

    kind = "doubling"


@dataclass(frozen=True)
class SemidoublingStep:
    w: int
    h0_dual: int  # dual vector of a hyperplane of the geometry being enlarged

    kind = "semidoubling"


@dataclass(frozen=True)
class TwistPair:
    """``(M, N)`` with ``M' = twist(M, N)``.

    ``frame`` and ``apex`` record where ``M'`` was cut: the hyperplane whose
    echelon basis coordinatizes ``m``/``n_twist``, and the point ``w``.
    """

    m: Matroid
    n_twist: Matroid
    apex: int = 0
    frame: Flat | None = None

    def __post_init__(self):
        if self.m.dim != self.n_twist.dim:
            raise MatroidError("twist pair lives in two different geometries")

    def rebuild(self) -> Matroid:
        """Recreate the decomposed matroid in its original coordinates."""
        if self.frame is None:
            return twist_doubling(self.m, self.n_twist)
        sym = set(self.m.elements) ^ set(self.n_twist.elements)
        lift = self.frame.lift
        pts = [lift(x) for x in self.m.elements]
        pts += [self.apex ^ lift(x) for x in sym]
        return Matroid.from_points(self.frame.ambient_dim, pts)


# -- elementary operations -------------------------------------------------


def restrict(m: Matroid, flat: Flat) -> Matroid:
    """``M|F`` re-coordinatized through the echelon basis of ``F``."""
    if flat.ambient_dim != m.dim:
        raise MatroidError(f"flat lives in dimension {flat.ambient_dim}, matroid in {m.dim}")
    pts = [flat.coords(p) for p in flat.points if p in m.ground]
    return Matroid.from_points(flat.dim, pts)


def complement(m: Matroid) -> Matroid:
    return Matroid.from_bits(m.dim, m.bits ^ PointSet.full(m.dim).bits)


def is_full_rank(m: Matroid) -> bool:
    return m.rank == m.dim


def linear_image(x: int, images: Sequence[int]) -> int:
    """Image of ``x`` under the linear map sending basis vector ``i`` to ``images[i]``."""
    y = 0
    i = 0
    while x:
        if x & 1:
            y ^= images[i]
        x >>= 1
        i += 1
    return y


def relabel(m: Matroid, images: Sequence[int], target_dim: int | None = None) -> Matroid:
    """Push ``m`` forward along an injective linear map given by basis images."""
    target_dim = m.dim if target_dim is None else target_dim
    if len(images) != m.dim:
        raise MatroidError("need one image per coordinate")
    if len(reduce_basis(images)) != m.dim:
        raise MatroidError("images are not linearly independent")
    return Matroid.from_points(target_dim, (linear_image(p, images) for p in m.elements))


# -- named matroids --------------------------------------------------------


def empty(n: int) -> Matroid:
    return Matroid(n, PointSet(check_dim(n)))


def projective_geometry(t: int) -> Matroid:
    if t < 1:
        raise MatroidError("projective_geometry needs t >= 1")
    return Matroid(t, PointSet.full(check_dim(t)))


def bose_burton(n: int, k: int) -> Matroid:
    """Complement of the flat spanned by the last ``n - k`` coordinates."""
    check_dim(n)
    if not 0 <= k <= n:
        raise MatroidError(f"Bose-Burton order must satisfy 0 <= k <= n, got k={k}, n={n}")
    low = (1 << k) - 1
    return Matroid.from_points(n, (p for p in range(1, 1 << n) if p & low))


def affine_geometry(n: int) -> Matroid:
    if n < 1:
        raise MatroidError("affine_geometry needs n >= 1")
    return bose_burton(n, 1)


def independent(t: int) -> Matroid:
    if t < 1:
        raise MatroidError("independent needs t >= 1")
    return Matroid.from_points(check_dim(t), (1 << i for i in range(t)))


def fano() -> Matroid:
    return projective_geometry(3)


def k5() -> Matroid:
    """Vectors of Hamming weight 1 or 2 in GF(2)^4 (the cycle matroid of K5)."""
    return Matroid.from_points(4, (p for p in range(1, 16) if bin(p).count("1") <= 2))


def ag_circ(t: int) -> Matroid:
    """Points with top coordinate 1, plus the point ``1``."""
    if t < 2:
        raise MatroidError("ag_circ needs t >= 2")
    check_dim(t)
    top = 1 << (t - 1)
    return Matroid.from_points(t, [1] + list(range(top, 1 << t)))


def p5() -> Matroid:
    return Matroid.from_points(3, [1, 2, 4, 3, 7])


# -- enlarging constructions ---------------------------------------------


def twist_doubling(m: Matroid, n: Matroid) -> Matroid:
    """``E' = E | (w + (E ^ D))`` with ``w = 1 << dim``."""
    if m.dim != n.dim:
        raise MatroidError(f"twist needs a shared geometry, got dims {m.dim} and {n.dim}")
    new_dim = check_dim(m.dim + 1)
    shift = 1 << m.dim  # index of point w + x is (x - 1) + 2**n
    return Matroid.from_bits(new_dim, m.bits | ((m.bits ^ n.bits) << shift))


def doubling(m: Matroid) -> Matroid:
    return twist_doubling(m, empty(m.dim))


def semidoubling(m: Matroid, h: Flat) -> Matroid:
    """Twist doubling by the affine geometry ``(G - H, G)``."""
    if h.ambient_dim != m.dim or h.dim != m.dim - 1:
        raise MatroidError("semidoubling needs a hyperplane of the matroid's geometry")
    return twist_doubling(m, complement(Matroid(m.dim, h.pointset)))


def semidoubling_by_dual(m: Matroid, h_dual: int) -> Matroid:
    return semidoubling(m, hyperplane_from_dual(h_dual, m.dim))


def apply_step(m: Matroid, step: DoublingStep | SemidoublingStep) -> Matroid:
    if isinstance(step, SemidoublingStep):
        if not 1 <= step.h0_dual < (1 << m.dim):
            raise MatroidError(f"h0_dual {step.h0_dual} is not a hyperplane of the {m.dim}-dim geometry")
        out = semidoubling_by_dual(m, step.h0_dual)
    elif isinstance(step, DoublingStep):
        out = doubling(m)
    else:
        raise MatroidError(f"unknown step {step!r}")
    if step.w != 1 << m.dim:
        raise MatroidError(f"step apex {step.w} is not the new top coordinate {1 << m.dim}")
    return out


def twist_decompose(mp: Matroid, w: int, h_dual: int) -> TwistPair:
    """Cut ``mp`` at apex ``w`` along the hyperplane dual to ``h_dual``."""
    check_point(w, mp.dim)
    if w in mp.ground:
        raise MatroidError(f"apex {w} is an element of the matroid")
    g = hyperplane_from_dual(h_dual, mp.dim)
    if w in g:
        raise MatroidError(f"apex {w} lies in the cutting hyperplane")
    sub = restrict(mp, g)
    d = [g.coords(x) for x in g.points if (x in mp.ground) != ((x ^ w) in mp.ground)]
    return TwistPair(sub, Matroid.from_points(g.dim, d), apex=w, frame=g)


def is_doubling_apex(m: Matroid, w: int) -> bool:
    """Triangle test: ``w`` is off ``E`` and each triangle through ``w`` meets ``E`` in 0 or 2 points."""
    if w in m.ground:
        return False
    return all((x in m.ground) == ((x ^ w) in m.ground) for x in range(1, 1 << m.dim) if x != w)


# -- interchange format ----------------------------------------------------


def format_matroid(m: Matroid) -> str:
    return f"dim {m.dim}\nelements {' '.join(map(str, m.elements))}\n".replace("elements \n", "elements\n")


def _records(text: str) -> dict[str, list[str]]:
    rec: dict[str, list[str]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rec.setdefault(key.rstrip(":"), []).append(rest.strip())
    return rec


def parse_matroid(text: str) -> Matroid:
    rec = _records(text)
    if "dim" not in rec or "elements" not in rec:
        raise MatroidError("matroid record needs 'dim' and 'elements' lines")
    try:
        n = int(rec["dim"][0])
        pts = [int(tok) for tok in rec["elements"][0].replace(",", " ").split()]
    except ValueError as exc:
        raise MatroidError(f"malformed matroid record: {exc}") from None
    if len(set(pts)) != len(pts):
        raise MatroidError("duplicate elements")
    return Matroid.from_points(n, pts)


def span_of(m: Matroid) -> Flat:
    return closure(m.elements, m.dim)
