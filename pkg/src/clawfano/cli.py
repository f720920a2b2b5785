"""Command-line interface.

Exit status: 0 on success, 1 when a checked property fails (no embedding,
suite failures, a proof-guaranteed case analysis breaking), 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import ast
import json
import logging
import sys

from . import census as census_mod
from . import matroid as mt
from . import structure as st
from . import suites
from .critical import critical_number
from .errors import MatroidError, ProofViolation
from .recognition import (
    claw_fano_kinds,
    find_claw_or_fano,
    find_induced_embedding,
    is_k_even,
    recognize_bose_burton,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> mt.Matroid:
    return mt.parse_matroid(_read(path))


def _bool(x: bool) -> str:
    return "true" if x else "false"


# -- subcommands -------------------------------------------------------------


def cmd_chi(args) -> int:
    res = critical_number(_load(args.file))
    print(res.chi)
    if args.witness:
        print("witness " + " ".join(map(str, res.witness.basis)))
    return EXIT_OK


def cmd_classify(args) -> int:
    m = _load(args.file)
    i3, f7 = claw_fano_kinds(m)
    rows = [
        ("dim", m.dim),
        ("size", m.size),
        ("rank", m.rank),
        ("full_rank", _bool(mt.is_full_rank(m))),
    ]
    rows += [(f"e{k}", _bool(is_k_even(m, k))) for k in range(2, max(m.dim, 3) + 1)]
    bb = recognize_bose_burton(m)
    rows += [
        ("bb_order", "none" if bb is None else bb),
        ("has_i3", _bool(i3)),
        ("has_f7", _bool(f7)),
        ("claw_fano_free", _bool(not (i3 or f7))),
        ("chi", critical_number(m).chi),
    ]
    for key, val in rows:
        print(f"{key}={val}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    m = _load(args.file)
    rep = st.decompose_claw_fano_free(m)
    print(f"claw_fano_free={_bool(rep.claw_fano_free)}")
    if rep.violation_witness is not None:
        plane, kind = rep.violation_witness
        print(f"witness_kind={kind}")
        print("witness_plane=" + " ".join(map(str, plane.basis)))
        return EXIT_OK
    cert = rep.certificate
    if rep.projection is not None:
        print("projection=" + " ".join(map(str, rep.projection.basis)))
    print(f"variant={cert.variant}")
    print(f"steps={len(cert.steps)}")
    text = st.format_certificate(cert)
    if args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_embed(args) -> int:
    n, m = _load(args.source), _load(args.target)
    emb = find_induced_embedding(n, m, align=tuple(args.align) if args.align else None)
    if emb is None:
        print("embedding=none")
        return EXIT_FAIL
    print("embedding=" + " ".join(map(str, emb.images)))
    return EXIT_OK


def _construct(name: str, params: list[str]) -> mt.Matroid:
    ints = lambda k: [int(x) for x in params[:k]]  # noqa: E731
    simple = {
        "empty": (1, mt.empty),
        "pg": (1, mt.projective_geometry),
        "projective_geometry": (1, mt.projective_geometry),
        "bb": (2, mt.bose_burton),
        "bose_burton": (2, mt.bose_burton),
        "ag": (1, mt.affine_geometry),
        "affine_geometry": (1, mt.affine_geometry),
        "independent": (1, mt.independent),
        "fano": (0, mt.fano),
        "k5": (0, mt.k5),
        "agcirc": (1, mt.ag_circ),
        "ag_circ": (1, mt.ag_circ),
        "p5": (0, mt.p5),
        "chibound": (1, st.chibound_witness),
        "chibound_witness": (1, st.chibound_witness),
        "gsfalse": (1, st.gsfalse_family),
        "gsfalse_family": (1, st.gsfalse_family),
    }
    if name in simple:
        arity, fn = simple[name]
        if len(params) != arity:
            raise MatroidError(f"construct {name} takes {arity} integer parameter(s)")
        try:
            return fn(*ints(arity))
        except ValueError as exc:
            raise MatroidError(str(exc)) from None
    if name == "doubling" and len(params) == 1:
        return mt.doubling(_load(params[0]))
    if name == "semidoubling" and len(params) == 2:
        return mt.semidoubling_by_dual(_load(params[0]), int(params[1]))
    if name == "twist" and len(params) == 2:
        return mt.twist_doubling(_load(params[0]), _load(params[1]))
    raise MatroidError(f"unknown construction {name!r} with {len(params)} parameter(s)")


def cmd_construct(args) -> int:
    sys.stdout.write(mt.format_matroid(_construct(args.name, args.params)))
    return EXIT_OK


def cmd_census(args) -> int:
    filters = [f for f in (args.filters or "").split(",") if f]
    for rec in census_mod.census(args.n, filters, args.mode):
        f = rec.flags
        row = {
            "dim": rec.representative.dim,
            "elements": list(rec.representative.elements),
            "canonical": rec.canonical.key[0] if rec.canonical.mode == "exact" else rec.canonical.mode,
            "full_rank": f.full_rank,
            "e3": f.e3,
            "claw_fano_free": f.claw_fano_free,
            "bb_order": f.bb_order,
            "chi": f.chi,
        }
        if rec.orbit_size is not None:
            row["orbit_size"] = rec.orbit_size
        print(json.dumps(row))
    return EXIT_OK


def _parse_param(text: str) -> tuple[str, object]:
    key, sep, raw = text.partition("=")
    if not sep:
        raise MatroidError(f"suite parameters look like key=value, got {text!r}")
    try:
        val = ast.literal_eval(raw)
    except (ValueError, SyntaxError):
        val = raw
    return key.replace("-", "_"), val


def cmd_verify(args) -> int:
    params = dict(_parse_param(t) for t in args.params)
    rep = suites.verify(args.suite, jobs=args.jobs, **params)
    if args.per_instance:
        for iid, ok in rep.verdicts:
            print(json.dumps({"suite": rep.suite, "instance": iid, "verdict": "pass" if ok else "fail"}))
    for text in rep.failures:
        iid = text.splitlines()[1].split(" ", 2)[2]
        print(json.dumps({"suite": rep.suite, "instance": iid, "verdict": "fail", "counterexample": text}))
    print(json.dumps({
        "suite": rep.suite,
        "instances_checked": rep.instances_checked,
        "failures": len(rep.failures),
        "verdict": "pass" if rep.passed else "fail",
        "wall_time": round(rep.wall_time, 3),
    }))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_replay(args) -> int:
    cert = st.parse_certificate(_read(args.certificate))
    out = cert.realize() if args.realize else st.replay(cert)
    sys.stdout.write(mt.format_matroid(out))
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clawfano", description="Claw- and Fano-free binary matroids.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", help="critical number")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="also print a basis of a largest flat avoiding E")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("classify", help="evenness, Bose-Burton order, claw/Fano freeness")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="structure certificate or violation witness")
    p.add_argument("file")
    p.add_argument("--certificate", metavar="OUT", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("embed", help="induced embedding of the first matroid in the second")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--align", nargs=2, type=int, metavar=("H_DUAL_TARGET", "H_DUAL_SOURCE"))
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("construct", help="named matroids and enlarging constructions")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("census", help="isomorphism classes in one dimension")
    p.add_argument("n", type=int)
    p.add_argument("--filters", help=f"comma-separated subset of {','.join(census_mod.FILTERS)}")
    p.add_argument("--mode", choices=["auto", "exact", "constructive"], default="auto")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help=", ".join(suites.SUITES))
    p.add_argument("params", nargs="*", help="key=value overrides")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--per-instance", action="store_true", help="one line per instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("replay", help="rebuild the matroid a certificate describes")
    p.add_argument("certificate")
    p.add_argument("--realize", action="store_true", help="map back to the decomposed input's coordinates")
    p.set_defaults(func=cmd_replay)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ProofViolation as exc:
        print(f"proof violation: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (MatroidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
