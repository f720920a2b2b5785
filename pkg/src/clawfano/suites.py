"""Named verification suites.

A suite is a deterministic stream of small picklable instances and a check
applied to each one. Instances are independent, so ``jobs > 1`` fans them out
over a process pool; results are merged in instance order either way. Every
failure is serialized as a matroid record (with ``#`` comment lines naming the
suite, the instance and what went wrong) that ``classify``/``decompose`` can
read back.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterator

import numpy as np

from .census import e3_classes
from .critical import check_technical_lemma, critical_number
from .errors import DimensionCapError, MatroidError, ProofViolation
from .gf2 import (
    Flat,
    enumerate_flats,
    flat_table,
    gaussian_binomial,
    hyperplane_from_dual,
    reduce_basis,
)
from .matroid import (
    Matroid,
    ag_circ,
    bose_burton,
    doubling,
    format_matroid,
    is_full_rank,
    k5,
    p5,
    projective_geometry,
    relabel,
    restrict,
    semidoubling_by_dual,
    twist_doubling,
)
from .recognition import (
    claw_fano_kinds,
    find_claw_or_fano,
    find_induced_embedding,
    four_circuit_criterion,
    has_induced,
    is_claw_fano_free,
    is_isomorphic,
    is_k_even,
    is_k_even_all_dims,
    recognize_affine_span,
)
from .structure import (
    AG_CIRC,
    EVEN_PLANE,
    check_k5_lemma,
    check_universality,
    chibound_witness,
    decompose_claw_fano_free,
    gsfalse_family,
    replay,
)

DEFAULT_SEED = 0


@dataclass
class Outcome:
    ok: bool
    detail: str = ""
    witness: Matroid | None = None
    value: object = None


@dataclass
class SuiteReport:
    suite: str
    instances_checked: int
    failures: list[str]
    wall_time: float
    params: dict = field(default_factory=dict)
    verdicts: list[tuple[str, bool]] = field(default_factory=list)
    values: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Suite:
    name: str
    doc: str
    defaults: dict
    instances: Callable[[dict], Iterator[tuple[str, tuple]]]
    check: Callable[[tuple, dict], Outcome]
    caps: dict = field(default_factory=dict)


# -- helpers ---------------------------------------------------------------


def _m(payload_dim: int, bits: int) -> Matroid:
    return Matroid.from_bits(payload_dim, bits)


def random_bits(rng: np.random.Generator, n: int) -> int:
    """Uniform random ground set of ``PG(n-1,2)`` as a bitset."""
    npts = (1 << n) - 1
    if npts <= 0:
        return 0
    v = rng.integers(0, 2, size=npts, dtype=np.uint8)
    return int.from_bytes(np.packbits(v, bitorder="little").tobytes(), "little")


def random_invertible(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    while True:
        images = tuple(int(x) for x in rng.integers(1, 1 << n, size=n)) if n else ()
        if len(reduce_basis(images)) == n:
            return images


def random_dual(rng: np.random.Generator, n: int) -> int:
    return int(rng.integers(1, 1 << n))


def _rng(p: dict) -> np.random.Generator:
    return np.random.default_rng(p.get("seed", DEFAULT_SEED))


def _all_masks(n: int) -> range:
    return range(1 << ((1 << n) - 1))


def _cap(p: dict, key: str, limit: int) -> None:
    if p[key] > limit:
        raise DimensionCapError(f"parameter {key}={p[key]} exceeds the cap {limit}")


# -- doubling-chi ------------------------------------------------------------


def _doubling_instances(p):
    n = p["exhaustive_dim"]
    for bits in _all_masks(n):
        yield f"x{n}:{bits}", (n, bits)
    rng = _rng(p)
    for i in range(p["samples"]):
        yield f"r{p['random_dim']}:{i}", (p["random_dim"], random_bits(rng, p["random_dim"]))


def _doubling_check(payload, p):
    m = _m(*payload)
    d = doubling(m)
    c0, c1 = critical_number(m).chi, critical_number(d).chi
    if c0 != c1:
        return Outcome(False, f"chi(M)={c0} but chi(doubling)={c1}", m)
    k0, k1 = claw_fano_kinds(m), claw_fano_kinds(d)
    for name, a, b in (("I3", k0[0], k1[0]), ("F7", k0[1], k1[1])):
        if not a and b:
            return Outcome(False, f"doubling created an induced {name}", m)
        if a and not b:
            return Outcome(False, f"doubling lost an induced {name}", m)
    return Outcome(True)


# -- twist-iff ---------------------------------------------------------------


def _twist_instances(p):
    k, n = p["k"], p["dim"]
    members = [b for b in _all_masks(n) if is_k_even(_m(n, b), k)]
    for mb in members:
        for nb in _all_masks(n):
            yield f"x{n}:{mb}:{nb}", (k, n, mb, nb)
    rng = _rng(p)
    for d in p["sample_dims"]:
        classes = [c for c in e3_classes(d) if is_k_even(c, k)]
        for i in range(p["samples"]):
            base = classes[int(rng.integers(len(classes)))]
            m = relabel(base, random_invertible(rng, d))
            if rng.integers(2):
                nb = random_bits(rng, d)
            elif rng.integers(2):
                nb = 0
            else:
                h = hyperplane_from_dual(random_dual(rng, d), d)
                nb = Matroid(d, h.pointset).bits ^ ((1 << ((1 << d) - 1)) - 1)
            yield f"r{d}:{i}", (k, d, m.bits, nb)


def _twist_check(payload, p):
    k, n, mb, nb = payload
    m, nm = _m(n, mb), _m(n, nb)
    lhs = is_k_even(twist_doubling(m, nm), k)
    rhs = is_k_even(nm, k - 1)
    if lhs != rhs:
        return Outcome(False, f"twist in E_{k}: {lhs}, N in E_{k - 1}: {rhs}; N = {nm.elements}", m)
    return Outcome(True)


# -- evenstructure-equiv -----------------------------------------------------


def _even_instances(p):
    for n in p["dims"]:
        for bits in _all_masks(n):
            yield f"x{n}:{bits}", (p["k"], n, bits)
    rng = _rng(p)
    n = p["sample_dim"]
    for i in range(p["samples"]):
        yield f"r{n}:{i}", (p["k"], n, random_bits(rng, n))


def _even_check(payload, p):
    k, n, bits = payload
    m = _m(n, bits)
    a, b = is_k_even(m, k), is_k_even_all_dims(m, k)
    if a != b:
        return Outcome(False, f"exactly-{k} even: {a}, all dims >= {k} even: {b}", m)
    return Outcome(True)


# -- pushchi -----------------------------------------------------------------


def _pushchi_instances(p):
    rng = _rng(p)
    for i in range(p["samples"]):
        n = int(rng.integers(p["min_dim"], p["max_dim"] + 1))
        yield f"r{i}", (n, random_bits(rng, n), random_dual(rng, n))


def _pushchi_check(payload, p):
    n, bits, h0 = payload
    m = _m(n, bits)
    lhs = critical_number(semidoubling_by_dual(m, h0)).chi
    rhs = critical_number(restrict(m, hyperplane_from_dual(h0, n))).chi + 1
    if lhs != rhs:
        return Outcome(False, f"H0 dual {h0}: chi(semidoubling)={lhs}, chi(M|H0)+1={rhs}", m)
    return Outcome(True, value=lhs)


# -- chibound ----------------------------------------------------------------


def _chibound_instances(p):
    for n in range(2, p["n_max"] + 1):
        yield f"witness:{n}", ("w", n, 0)
    for n in range(1, p["census_max"] + 1):
        for i, m in enumerate(e3_classes(n)):
            yield f"census:{n}:{i}", ("c", n, m.bits)


def _chibound_check(payload, p):
    kind, n, bits = payload
    bound = n // 2 + 1
    if kind == "w":
        m = chibound_witness(n)
        c = critical_number(m).chi
        if not is_k_even(m, 3):
            return Outcome(False, "witness is not an even plane matroid", m, c)
        if c != bound:
            return Outcome(False, f"witness has chi={c}, expected {bound}", m, c)
        return Outcome(True, value=c)
    m = _m(n, bits)
    c = critical_number(m).chi
    if c > bound:
        return Outcome(False, f"even plane matroid with chi={c} > {bound}", m, c)
    return Outcome(True, value=c)


# -- maintech-exhaustive -----------------------------------------------------


def _maintech_instances(p):
    for n in range(0, p["n"] + 1):
        for bits in _all_masks(n):
            if not p["full_rank_only"] or is_full_rank(_m(n, bits)):
                yield f"x{n}:{bits}", (n, bits)


def _valid_witness(m: Matroid, plane: Flat, kind: str) -> bool:
    pts = [x for x in plane.points if x in m.ground]
    if kind == "F7":
        return len(pts) == 7
    return len(pts) == 3 and len(reduce_basis(pts)) == 3


def _maintech_check(payload, p):
    m = _m(*payload)
    free = is_claw_fano_free(m)
    try:
        rep = decompose_claw_fano_free(m)
    except ProofViolation as exc:
        return Outcome(False, f"decomposition aborted: {exc}", m)
    if rep.claw_fano_free != free:
        return Outcome(False, f"decision {rep.claw_fano_free} disagrees with the plane scan {free}", m)
    if not free:
        if rep.violation_witness is None or not _valid_witness(m, *rep.violation_witness):
            return Outcome(False, "missing or invalid violation witness", m)
        return Outcome(True, value="witness")
    cert = rep.certificate
    out = replay(cert)
    if cert.realize() != m:
        return Outcome(False, "certificate does not replay to the input", m)
    if out.dim == m.dim and not is_isomorphic(out, m):
        return Outcome(False, "replay is not isomorphic to the input", m)
    if not is_claw_fano_free(out):
        return Outcome(False, "replayed certificate has an induced I3 or F7", m)
    if cert.variant == EVEN_PLANE and not is_k_even(out, 3):
        return Outcome(False, "even-plane certificate outside E_3", m)
    if cert.variant == AG_CIRC:
        if not has_induced(out, p5()):
            return Outcome(False, "AG-circ certificate without an induced P5", m)
        if critical_number(out).chi != 2:
            return Outcome(False, "AG-circ certificate with chi != 2", m)
    return Outcome(True, value=cert.variant)


# -- main1 -------------------------------------------------------------------


def _main1_instances(p):
    for n in range(0, p["exhaustive_max"] + 1):
        for bits in _all_masks(n):
            yield f"x{n}:{bits}", (n, bits)
    for n in range(p["exhaustive_max"] + 1, p["census_max"] + 1):
        for i, m in enumerate(e3_classes(n)):
            yield f"census:{n}:{i}", (n, m.bits)


def _main1_check(payload, p):
    m = _m(*payload)
    if not is_full_rank(m) or not is_claw_fano_free(m) or has_induced(m, k5()):
        return Outcome(True, value="vacuous")
    c = critical_number(m).chi
    if c > 2:
        return Outcome(False, f"(I3, F7, K5)-free matroid with chi={c}", m)
    return Outcome(True, value="checked")


# -- gsfalse -----------------------------------------------------------------


def _gsfalse_instances(p):
    for k in range(1, p["k_max"] + 1):
        yield f"k{k}", (k,)


def _gsfalse_check(payload, p):
    (k,) = payload
    try:
        m = gsfalse_family(k)
    except ProofViolation as exc:
        return Outcome(False, str(exc))
    c = critical_number(m).chi
    even = is_k_even_all_dims(m, 3) if m.dim <= 6 else is_k_even(m, 3)
    if not even:
        return Outcome(False, "not an even plane matroid", m)
    if find_claw_or_fano(m) is not None:
        return Outcome(False, "has an induced I3 or F7", m)
    if c < k:
        return Outcome(False, f"chi={c} < {k}", m)
    return Outcome(True, value=c)


# -- hungry ------------------------------------------------------------------


def _hungry_instances(p):
    witnesses = {n: critical_number(chibound_witness(n)).chi for n in range(1, p["n_max"] + 1)}
    for d in range(1, p["n_dim_max"] + 1):
        for i, nm in enumerate(e3_classes(d)):
            for n, c in witnesses.items():
                if c >= d + 4:
                    yield f"N{d}:{i}:M{n}", (d, nm.bits, n)


def _hungry_check(payload, p):
    d, nbits, n = payload
    nm, m = _m(d, nbits), chibound_witness(n)
    t0 = time.perf_counter()
    verdict = check_universality(m, nm, strict=p["strict"])
    elapsed = time.perf_counter() - t0
    if verdict.status != "holds":
        return Outcome(False, f"M=chibound_witness({n}): {verdict.status}: {verdict.detail}", nm, elapsed)
    if not verdict.embedding.is_valid_for(nm, m):
        return Outcome(False, "embedding fails replay", nm, elapsed)
    if elapsed > p["time_limit"]:
        return Outcome(False, f"search took {elapsed:.1f}s", nm, elapsed)
    return Outcome(True, value=round(elapsed, 4))


# -- k5-lemma ----------------------------------------------------------------


def _k5_instances(p):
    for n in range(0, p["census_max"] + 1):
        for i, m in enumerate(e3_classes(n)):
            yield f"census:{n}:{i}", (n, m.bits)
    for n in range(4, p["witness_max"] + 1):
        yield f"witness:{n}", (n, chibound_witness(n).bits)


def _k5_check(payload, p):
    m = _m(*payload)
    verdict = check_k5_lemma(m)
    if verdict.status == "violated":
        return Outcome(False, verdict.detail, m)
    if verdict.status == "holds" and not verdict.embedding.is_valid_for(k5(), m):
        return Outcome(False, "K5 embedding fails replay", m)
    return Outcome(True, value=verdict.status)


# -- technical-lemma ---------------------------------------------------------


def _technical_instances(p):
    n = p["n"]
    for bits in _all_masks(n):
        m = _m(n, bits)
        if is_full_rank(m) and is_claw_fano_free(m):
            yield f"x{n}:{bits}", (n, bits)


def _technical_check(payload, p):
    m = _m(*payload)
    n = m.dim
    tally = {"vacuous": 0, "B1": 0, "B2": 0}
    for w in range(1, 1 << n):
        if w in m.ground:
            continue
        for u in range(1, 1 << n):
            if not bin(u & w).count("1") & 1:
                continue  # H must avoid w
            verdict = check_technical_lemma(m, w, u, check_pre=False)
            if verdict == "violated":
                return Outcome(False, f"w={w}, H dual {u}: neither B1 nor B2 is affine", m)
            tally[verdict] += 1
    return Outcome(True, value=tally)


# -- chi-ground-truth --------------------------------------------------------


def _ground_truth_instances(p):
    for t in range(1, p["pg_max"] + 1):
        yield f"PG{t}", ("pg", t, 0, t)
    for n in range(0, p["bb_max"] + 1):
        for k in range(0, n + 1):
            yield f"BB{n},{k}", ("bb", n, k, k)
    for t in range(3, p["agcirc_max"] + 1):
        yield f"AGcirc{t}", ("agc", t, 0, 2)
    yield "K5", ("k5", 4, 0, 3)


def _ground_truth_check(payload, p):
    kind, a, b, expected = payload
    m = {"pg": lambda: projective_geometry(a), "bb": lambda: bose_burton(a, b),
         "agc": lambda: ag_circ(a), "k5": k5}[kind]()
    c = critical_number(m).chi
    if c != expected:
        return Outcome(False, f"chi={c}, expected {expected}", m, c)
    return Outcome(True, value=c)


# -- oracles -----------------------------------------------------------------


def _brute_subspace_counts(n: int) -> list[int]:
    """Count subspaces of GF(2)^n by testing every point subset for closure."""
    npts = (1 << n) - 1
    counts = [0] * (n + 1)
    for mask in range(1 << npts):
        pts = [i + 1 for i in range(npts) if mask >> i & 1]
        inside = set(pts)
        if all((x ^ y) in inside for x in pts for y in pts if x != y):
            counts[(len(pts) + 1).bit_length() - 1] += 1
    return counts


def _oracle_instances(p):
    for n in range(0, p["flat_count_max"] + 1):
        yield f"flats:{n}", ("flats", n, 0)
    rng = _rng(p)
    for bits in _all_masks(3):
        yield f"claw:x3:{bits}", ("claw", 3, bits)
    for i in range(p["samples"]):
        n = int(rng.integers(4, p["sample_max_dim"] + 1))
        if i % 2:
            # sparse sets hit the free side of the test
            k = int(rng.integers(1, 2 * n + 1))
            pts = {int(x) for x in rng.integers(1, 1 << n, size=k)}
            bits = Matroid.from_points(n, pts).bits
        else:
            bits = random_bits(rng, n)
        yield f"claw:r{n}:{i}", ("claw", n, bits)
    for i in range(p["samples"]):
        n = int(rng.integers(1, p["sample_max_dim"] + 1))
        mode = i % 3
        if mode == 0:
            # affine: a flat minus one of its hyperplanes
            d = int(rng.integers(1, n + 1))
            basis = random_invertible(rng, n)[:d]
            f = Flat.span(n, basis)
            u = random_dual(rng, d)
            bits = Matroid.from_points(n, (f.lift(c) for c in range(1, 1 << d) if bin(c & u).count("1") & 1)).bits
        elif mode == 1:
            k = int(rng.integers(1, 6))
            bits = Matroid.from_points(n, {int(x) for x in rng.integers(1, 1 << n, size=k)}).bits
        else:
            bits = random_bits(rng, n)
        if bits:
            yield f"affine:{n}:{i}", ("affine", n, bits)


def _oracle_check(payload, p):
    kind, n, bits = payload
    if kind == "flats":
        brute = _brute_subspace_counts(n)
        for d in range(n + 1):
            g = gaussian_binomial(n, d)
            e = sum(1 for _ in enumerate_flats(n, d))
            t = len(flat_table(n, d)) if d else 1
            if not brute[d] == g == e == t:
                return Outcome(False, f"d={d}: brute {brute[d]}, gaussian {g}, enumerated {e}, table {t}")
        return Outcome(True, value=brute)
    m = _m(n, bits)
    if kind == "claw":
        scan = is_claw_fano_free(m)
        search = not has_induced(m, Matroid.from_points(3, [1, 2, 4])) and not has_induced(m, projective_geometry(3))
        if scan != search:
            return Outcome(False, f"plane scan {scan}, embedding search {search}", m)
        return Outcome(True, value=scan)
    a, b = recognize_affine_span(m), four_circuit_criterion(m)
    if a != b:
        return Outcome(False, f"affine recognizer {a}, four-circuit criterion {b}", m)
    return Outcome(True, value=a)


# -- registry and runner -----------------------------------------------------


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("doubling-chi", "doubling preserves chi and I3/F7 absence",
              {"exhaustive_dim": 4, "random_dim": 6, "samples": 10_000, "seed": DEFAULT_SEED},
              _doubling_instances, _doubling_check, {"exhaustive_dim": 4, "random_dim": 9}),
        Suite("twist-iff", "twist(M, N) is k-even iff N is (k-1)-even, for k-even M",
              {"k": 3, "dim": 3, "sample_dims": (4, 5), "samples": 200, "seed": DEFAULT_SEED},
              _twist_instances, _twist_check, {"dim": 3}),
        Suite("evenstructure-equiv", "exactly-k evenness equals evenness in all dimensions >= k",
              {"k": 3, "dims": (3, 4), "sample_dim": 5, "samples": 1000, "seed": DEFAULT_SEED},
              _even_instances, _even_check, {"sample_dim": 7}),
        Suite("pushchi", "chi(semidoubling of M w.r.t. H0) = chi(M|H0) + 1",
              {"samples": 1000, "min_dim": 2, "max_dim": 6, "seed": DEFAULT_SEED},
              _pushchi_instances, _pushchi_check, {"max_dim": 9}),
        Suite("chibound", "chi <= floor(n/2) + 1 on E_3, with equality for the witnesses",
              {"n_max": 10, "census_max": 6},
              _chibound_instances, _chibound_check, {"n_max": 16, "census_max": 7}),
        Suite("maintech-exhaustive", "claw/Fano-free iff one of the two certified outcomes",
              {"n": 4, "full_rank_only": True},
              _maintech_instances, _maintech_check, {"n": 4}),
        Suite("main1", "(I3, F7, K5)-free full-rank matroids have chi <= 2",
              {"exhaustive_max": 4, "census_max": 6},
              _main1_instances, _main1_check, {"exhaustive_max": 4, "census_max": 7}),
        Suite("gsfalse", "even plane, claw/Fano-free matroids of large chi",
              {"k_max": 5}, _gsfalse_instances, _gsfalse_check, {"k_max": 7}),
        Suite("hungry", "chi(M) >= dim(N) + 4 forces an induced N, for M, N in E_3",
              {"n_max": 10, "n_dim_max": 2, "strict": False, "time_limit": 60.0},
              _hungry_instances, _hungry_check, {"n_max": 14, "n_dim_max": 4}),
        Suite("k5-lemma", "even plane matroids with chi >= 3 contain an induced K5",
              {"census_max": 6, "witness_max": 8},
              _k5_instances, _k5_check, {"census_max": 7, "witness_max": 12}),
        Suite("technical-lemma", "apex partition: B1 or B2 is affine whenever both are nonempty",
              {"n": 4}, _technical_instances, _technical_check, {"n": 5}),
        Suite("chi-ground-truth", "critical numbers of the named families",
              {"pg_max": 6, "bb_max": 6, "agcirc_max": 6},
              _ground_truth_instances, _ground_truth_check, {"pg_max": 10, "bb_max": 10, "agcirc_max": 10}),
        Suite("oracles", "independent oracles agree: claw scan, flat counts, affine recognition",
              {"flat_count_max": 4, "samples": 400, "sample_max_dim": 5, "seed": DEFAULT_SEED},
              _oracle_instances, _oracle_check, {"flat_count_max": 4, "sample_max_dim": 6}),
    ]
}


def _resolve(name: str, params: dict) -> tuple[Suite, dict]:
    if name not in SUITES:
        raise MatroidError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    suite = SUITES[name]
    p = dict(suite.defaults)
    for key, val in params.items():
        if key not in p:
            raise MatroidError(f"suite {name} has no parameter {key!r}")
        p[key] = val
    for key, limit in suite.caps.items():
        _cap(p, key, limit)
    return suite, p


def verify(name: str, *, jobs: int = 1, **params) -> SuiteReport:
    """Run one suite; the report's ``failures`` are serialized counterexamples."""
    suite, p = _resolve(name, params)
    t0 = time.perf_counter()
    items = list(suite.instances(p))
    check = partial(suite.check, p=p)
    payloads = [payload for _, payload in items]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(check, payloads, chunksize=max(1, len(items) // (8 * jobs))))
    else:
        outcomes = [check(x) for x in payloads]
    failures: list[str] = []
    verdicts: list[tuple[str, bool]] = []
    values: dict[str, object] = {}
    for (iid, _), out in zip(items, outcomes):
        verdicts.append((iid, out.ok))
        if out.value is not None:
            values[iid] = out.value
        if not out.ok:
            failures.append(serialize_failure(name, iid, out))
    return SuiteReport(name, len(items), failures, time.perf_counter() - t0, p, verdicts, values)


def serialize_failure(suite: str, instance: str, out: Outcome) -> str:
    lines = [f"# suite {suite}", f"# instance {instance}", f"# detail {out.detail}"]
    text = "\n".join(lines) + "\n"
    if out.witness is not None:
        text += format_matroid(out.witness)
    return text
