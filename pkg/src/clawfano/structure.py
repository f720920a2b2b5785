"""Certified decompositions and the extremal families.

Every decomposition returns a :class:`StructureCertificate`: a base matroid,
the enlarging steps in base-outward order (apex always on the new top
coordinate), and a ``frame``, the images of the replayed matroid's basis
vectors in the input's coordinates. ``relabel(replay(cert), frame)`` then
reproduces the input bit-for-bit, so soundness is checked by equality rather
than by an isomorphism search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .critical import apex_partition, critical_number, is_affine_in
from .errors import MatroidError, ProofViolation
from .gf2 import (
    Flat,
    closure,
    dual_of_hyperplane,
    hyperplane_from_dual,
    reduce_basis,
)
from .matroid import (
    DoublingStep,
    Matroid,
    SemidoublingStep,
    _records,
    ag_circ,
    affine_geometry,
    apply_step,
    format_matroid,
    is_doubling_apex,
    is_full_rank,
    k5,
    linear_image,
    parse_matroid,
    projective_geometry,
    relabel,
    restrict,
    semidoubling_by_dual,
    twist_decompose,
)
from .recognition import (
    InducedEmbedding,
    find_claw_or_fano,
    find_induced_embedding,
    flat_at,
    flat_chunks,
    intersection_sizes,
    is_k_even,
    recognize_bose_burton,
)

Step = Union[DoublingStep, SemidoublingStep]

EVEN_PLANE = "EvenPlaneChain"
AG_CIRC = "AgCircChain"


@dataclass(frozen=True)
class StructureCertificate:
    variant: str
    base: Matroid
    steps: tuple[Step, ...] = ()
    frame: tuple[int, ...] | None = None  # replay basis -> input coordinates
    target_dim: int | None = None

    @property
    def dim(self) -> int:
        return self.base.dim + len(self.steps)

    def realize(self) -> Matroid:
        """The certified matroid in the coordinates it was decomposed in."""
        out = replay(self)
        if self.frame is None:
            return out
        return relabel(out, self.frame, self.target_dim)


@dataclass(frozen=True)
class DecisionReport:
    claw_fano_free: bool
    certificate: StructureCertificate | None = None
    violation_witness: tuple[Flat, str] | None = None
    projection: Flat | None = None  # cl(E) when the input was not full-rank


@dataclass(frozen=True)
class AgDoublingChain:
    """Outcome of :func:`recognize_ag_doubling_chain`.

    ``affine`` means the matroid is itself ``AG(n-1,2)``; otherwise it is
    ``ag_circ(t)`` grown by ``steps`` doublings.
    """

    affine: bool
    t: int
    steps: tuple[DoublingStep, ...]
    frame: tuple[int, ...]

    @property
    def base(self) -> Matroid:
        return affine_geometry(self.t) if self.affine else ag_circ(self.t)


@dataclass(frozen=True)
class Verdict:
    status: str  # "holds", "hypothesis not met" or "violated"
    detail: str = ""
    embedding: InducedEmbedding | None = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return self.status != "violated"


# -- linear helpers --------------------------------------------------------


def _identity(n: int) -> tuple[int, ...]:
    return tuple(1 << i for i in range(n))


def _inverse_images(images: tuple[int, ...]) -> tuple[int, ...]:
    """Basis images of the inverse of an invertible linear map."""
    n = len(images)
    rows = [(images[i], 1 << i) for i in range(n)]  # (value, combination)
    piv: dict[int, tuple[int, int]] = {}
    for val, comb in rows:
        while val:
            hb = val.bit_length() - 1
            if hb in piv:
                pv, pc = piv[hb]
                val ^= pv
                comb ^= pc
            else:
                piv[hb] = (val, comb)
                break
        else:
            raise MatroidError("map is not invertible")
    out = []
    for j in range(n):
        val, comb = 1 << j, 0
        while val:
            pv, pc = piv[val.bit_length() - 1]
            val ^= pv
            comb ^= pc
        out.append(comb)
    return tuple(out)


def _pull_back_hyperplane(h0: Flat, frame: tuple[int, ...]) -> int:
    """Dual vector of ``frame^-1(h0)``, a hyperplane in replay coordinates."""
    inv = _inverse_images(frame)
    return dual_of_hyperplane(Flat.span(h0.ambient_dim, (linear_image(b, inv) for b in h0.basis)))


def _first_hyperplane(n: int, pred) -> int | None:
    for u in range(1, 1 << n):
        if pred(u):
            return u
    return None


def _dot(u: int, x: int) -> int:
    return bin(u & x).count("1") & 1


# -- replay and serialization -------------------------------------------------


def replay(cert: StructureCertificate) -> Matroid:
    """Apply the steps to the base; raises on malformed certificates."""
    base = cert.base
    if cert.variant == EVEN_PLANE:
        if base.dim > 2 and recognize_bose_burton(base) not in (0, 1, 2):
            raise MatroidError("even-plane chain must start from a Bose-Burton geometry of order <= 2")
    elif cert.variant == AG_CIRC:
        if base.dim < 3 or base != ag_circ(base.dim):
            raise MatroidError("AG-circ chain must start from ag_circ(t) with t >= 3")
        if any(not isinstance(s, DoublingStep) for s in cert.steps):
            raise MatroidError("AG-circ chains contain doublings only")
    else:
        raise MatroidError(f"unknown certificate variant {cert.variant!r}")
    m = base
    for step in cert.steps:
        m = apply_step(m, step)
    return m


def format_certificate(cert: StructureCertificate) -> str:
    lines = [f"variant {cert.variant}", format_matroid(cert.base).rstrip("\n")]
    for s in cert.steps:
        if isinstance(s, SemidoublingStep):
            lines.append(f"step kind=semidoubling apex={s.w} h0_dual={s.h0_dual}")
        else:
            lines.append(f"step kind=doubling apex={s.w}")
    if cert.frame is not None:
        lines.append(f"target_dim {cert.target_dim}")
        lines.append("frame " + " ".join(map(str, cert.frame)))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> StructureCertificate:
    rec = _records(text)
    if "variant" not in rec:
        raise MatroidError("certificate needs a 'variant' line")
    base = parse_matroid(text)
    steps: list[Step] = []
    for raw in rec.get("step", []):
        fields = dict(tok.split("=", 1) for tok in raw.split())
        try:
            kind = fields["kind"]
            apex = int(fields["apex"])
            if kind == "doubling":
                steps.append(DoublingStep(apex))
            elif kind == "semidoubling":
                steps.append(SemidoublingStep(apex, int(fields["h0_dual"])))
            else:
                raise MatroidError(f"unknown step kind {kind!r}")
        except (KeyError, ValueError) as exc:
            raise MatroidError(f"malformed step {raw!r}: {exc}") from None
    frame = None
    target = None
    if "frame" in rec:
        frame = tuple(int(t) for t in rec["frame"][0].split())
        target = int(rec["target_dim"][0]) if "target_dim" in rec else base.dim + len(steps)
    return StructureCertificate(rec["variant"][0], base, tuple(steps), frame, target)


# -- even plane decomposition ---------------------------------------------


def _e3_chain(m: Matroid) -> tuple[Matroid, list[Step], tuple[int, ...]]:
    n = m.dim
    if m.size == 0 or n <= 2 or recognize_bose_burton(m) is not None:
        return m, [], _identity(n)
    # a triangle meeting E once lies in a hyperplane H with M|H not Bose-Burton
    tri_counts = intersection_sizes(m, 2)
    tri = flat_at(n, 2, int(np.flatnonzero(tri_counts == 1)[0]))
    u = _first_hyperplane(n, lambda u: not any(_dot(u, b) for b in tri.basis))
    h = hyperplane_from_dual(u, n)
    for w in range(1, 1 << n):
        if w in m.ground or w in h:
            continue
        pair = twist_decompose(m, w, u)
        if recognize_bose_burton(pair.n_twist) == 1:
            break
    else:
        raise ProofViolation("no apex realizes the matroid as a semidoubling of M|H", format_matroid(m))
    base, steps, sub_frame = _e3_chain(pair.m)
    h0 = closure([x for x in range(1, 1 << (n - 1)) if x not in pair.n_twist.ground], n - 1)
    steps.append(SemidoublingStep(1 << (n - 1), _pull_back_hyperplane(h0, sub_frame)))
    frame = tuple(h.lift(f) for f in sub_frame) + (w,)
    return base, steps, frame


def decompose_e3(m: Matroid) -> StructureCertificate | None:
    """Semidoubling chain from a Bose-Burton geometry of order <= 2, or ``None`` off the class."""
    if not is_k_even(m, 3):
        return None
    base, steps, frame = _e3_chain(m)
    return StructureCertificate(EVEN_PLANE, base, tuple(steps), frame, m.dim)


# -- AG-circ doubling chains -----------------------------------------------


def _ag_chain(m: Matroid) -> AgDoublingChain:
    n = m.dim
    u = _first_hyperplane(n, lambda u: all(x in m.ground for x in range(1, 1 << n) if _dot(u, x)))
    if u is None:
        raise MatroidError("matroid has no affine restriction of full dimension")
    h = hyperplane_from_dual(u, n)
    inner = [x for x in h.points if x in m.ground]
    y = next(x for x in range(1, 1 << n) if _dot(u, x))
    span = closure(inner, n)
    if span.dim == 0:
        frame = (y,) + h.basis
        return AgDoublingChain(True, n, (), frame)
    if span.dim == 1:
        frame = _complete_basis(inner, h.basis) + (y,)
        return AgDoublingChain(False, n, (), frame)
    outside = [p for p in span.points if p not in m.ground]
    if len(closure(outside, n)) != len(outside) or len(outside) != (1 << (span.dim - 1)) - 1:
        raise ProofViolation("inner part of an affine-restricted claw/Fano-free matroid is not affine",
                             format_matroid(m))
    w = min(outside)
    if not is_doubling_apex(m, w):
        raise ProofViolation(f"point {w} of the inner hyperplane is not a doubling apex", format_matroid(m))
    u2 = _first_hyperplane(n, lambda v: v != u and _dot(v, w))
    h2 = hyperplane_from_dual(u2, n)
    sub = _ag_chain(restrict(m, h2))
    frame = tuple(h2.lift(f) for f in sub.frame) + (w,)
    return AgDoublingChain(sub.affine, sub.t, sub.steps + (DoublingStep(1 << (n - 1)),), frame)


def _complete_basis(start: list[int], pool: tuple[int, ...]) -> tuple[int, ...]:
    basis = list(start)
    for b in pool:
        if len(reduce_basis(basis + [b])) > len(basis):
            basis.append(b)
    return tuple(basis)


def recognize_ag_doubling_chain(m: Matroid) -> AgDoublingChain:
    """Read off ``AG(n-1,2)`` or an ``ag_circ(t)`` doubling chain.

    The caller must supply a matroid with an ``AG(n-1,2)`` restriction and
    no induced I3 or F7.
    """
    return _ag_chain(m)


# -- claw/Fano-free decomposition ----------------------------------------


def _preferred_triangle(m: Matroid) -> tuple[int, int, int]:
    """First triangle with exactly two points in E, preferring one inside a P5 plane."""
    n = m.dim
    preferred: set[tuple[int, ...]] = set()
    for _, planes in flat_chunks(n, 3):
        counts = m.member[planes].sum(axis=1)
        for row in planes[counts == 5]:
            a, b = (int(p) for p in row if not m.member[p])
            for x in row:
                x = int(x)
                if x in (a, b, a ^ b):
                    continue
                for c in (a, b):
                    preferred.add(tuple(sorted((c, x, c ^ x))))
    first = None
    for _, tris in flat_chunks(n, 2):
        counts = m.member[tris].sum(axis=1)
        for row in tris[counts == 2]:
            key = tuple(sorted(int(p) for p in row))
            if not preferred or key in preferred:
                return key
            if first is None:
                first = key
    if first is None:
        raise ProofViolation("full-rank Fano-free matroid with no triangle meeting E twice", format_matroid(m))
    return first


def _cf_chain(m: Matroid) -> tuple[str, Matroid, list[Step], tuple[int, ...]]:
    n = m.dim
    if n <= 2:
        return EVEN_PLANE, m, [], _identity(n)
    tri = _preferred_triangle(m)
    u, v = sorted(p for p in tri if p in m.ground)
    w = u ^ v
    basis = [u, v]
    for p in m.elements:
        if len(reduce_basis(basis + [p])) > len(basis):
            basis.append(p)
    h = closure([b for b in basis if b != u], n)
    h_dual = dual_of_hyperplane(h)
    part = apex_partition(m, h_dual, w)
    if not len(part.b1):
        variant, base, steps, sub_frame = _cf_chain(restrict(m, h))
        steps.append(DoublingStep(1 << (n - 1)))
        return variant, base, steps, tuple(h.lift(f) for f in sub_frame) + (w,)
    if is_affine_in(part.b2, h):
        chain = recognize_ag_doubling_chain(m)
        if chain.affine or chain.t == 2:
            return EVEN_PLANE, chain.base, list(chain.steps), chain.frame
        return AG_CIRC, chain.base, list(chain.steps), chain.frame
    if is_affine_in(part.b1, h):
        h0 = closure([x for x in h.points if x not in part.b1], n)
        variant, base, steps, sub_frame = _cf_chain(restrict(m, h))
        if variant != EVEN_PLANE:
            raise ProofViolation("semidoubling of an AG-circ doubling chain", format_matroid(m))
        h0_local = Flat.span(n - 1, (h.coords(b) for b in h0.basis))
        steps.append(SemidoublingStep(1 << (n - 1), _pull_back_hyperplane(h0_local, sub_frame)))
        return variant, base, steps, tuple(h.lift(f) for f in sub_frame) + (w,)
    raise ProofViolation(f"apex partition at w={w}, H dual {h_dual}: neither B1 nor B2 is affine",
                         format_matroid(m))


def decompose_claw_fano_free(m: Matroid) -> DecisionReport:
    """Violation witness, or a certificate for one of the two structural outcomes."""
    witness = find_claw_or_fano(m)
    if witness is not None:
        return DecisionReport(False, violation_witness=witness)
    projection = None
    work = m
    if not is_full_rank(m):
        projection = closure(m.elements, m.dim)
        work = restrict(m, projection)
    variant, base, steps, frame = _cf_chain(work)
    if variant == EVEN_PLANE:
        # report outcome (1) in its semidoubling normal form
        if not is_k_even(work, 3):
            raise ProofViolation("even-plane outcome for a matroid outside E_3", format_matroid(m))
        base, e3_steps, frame = _e3_chain(work)
        steps = e3_steps
    if projection is not None:
        frame = tuple(projection.lift(f) for f in frame)
    cert = StructureCertificate(variant, base, tuple(steps), frame, m.dim)
    return DecisionReport(True, certificate=cert, projection=projection)


# -- extremal families -------------------------------------------------------


def chibound_witness(n: int) -> Matroid:
    """Even plane matroid of dimension n with critical number ``n // 2 + 1``.

    Start from PG(1,2) and semidouble repeatedly with respect to the
    hyperplane dual to the current top coordinate, i.e. the previous geometry.
    """
    if n < 1:
        raise MatroidError("chibound_witness needs n >= 1")
    if n == 1:
        return projective_geometry(1)
    m = projective_geometry(2)
    while m.dim < n:
        m = semidoubling_by_dual(m, 1 << (m.dim - 1))
    return m


def gsfalse_family(k: int) -> Matroid:
    """Even plane matroid with no induced I3 or F7 and critical number at least k."""
    if k < 1:
        raise MatroidError("gsfalse_family needs k >= 1")
    m = affine_geometry(1) if k == 1 else chibound_witness(2 * k - 2)
    if not is_k_even(m, 3) or find_claw_or_fano(m) is not None or critical_number(m).chi < k:
        raise ProofViolation(f"family member for k={k} fails its checks", format_matroid(m))
    return m


# -- universality and the K5 lemma ------------------------------------------


def check_universality(m: Matroid, n: Matroid, *, strict: bool = False,
                       align: tuple[int, int] | None = None) -> Verdict:
    """Induced ``n`` inside ``m`` whenever ``chi(m) >= dim(n) + 4``.

    ``strict`` uses the refined threshold ``dim(n) + min(4, chi(n) + 2)`` and
    demands hyperplane alignment (``align=(h_dual_m, h_dual_n)``, by default
    the top-coordinate hyperplanes of both).
    """
    if not is_k_even(m, 3) or not is_k_even(n, 3):
        raise MatroidError("universality is stated for even plane matroids")
    chi_m = critical_number(m).chi
    if strict:
        need = n.dim + min(4, critical_number(n).chi + 2)
    else:
        need = n.dim + 4
    if chi_m < need:
        return Verdict("hypothesis not met", f"chi(M)={chi_m} < {need}")
    if strict and n.dim > 0:
        align = align or (1 << (m.dim - 1), 1 << (n.dim - 1))
        emb = find_induced_embedding(n, m, align=align)
    else:
        emb = find_induced_embedding(n, m)
    if emb is None:
        return Verdict("violated", f"chi(M)={chi_m} >= {need} but no induced embedding")
    return Verdict("holds", f"chi(M)={chi_m}", emb)


def check_k5_lemma(m: Matroid) -> Verdict:
    if not is_k_even(m, 3):
        raise MatroidError("the K5 lemma is stated for even plane matroids")
    c = critical_number(m).chi
    if c < 3:
        return Verdict("hypothesis not met", f"chi={c}")
    emb = find_induced_embedding(k5(), m)
    if emb is None:
        return Verdict("violated", f"chi={c} but no induced K5")
    return Verdict("holds", f"chi={c}", emb)


def semidoubling_apexes(m: Matroid, h_dual: int) -> list[int]:
    """Apexes ``w`` off ``E`` and ``H`` for which ``m`` is a semidoubling of ``m|H``."""
    h = hyperplane_from_dual(h_dual, m.dim)
    out = []
    for w in range(1, 1 << m.dim):
        if w in m.ground or w in h:
            continue
        if recognize_bose_burton(twist_decompose(m, w, h_dual).n_twist) == 1:
            out.append(w)
    return out
