"""Acceptance criteria 1-13, each at its stated scale with zero tolerated failures.

Run under pytest (one ``criterion N: PASS/FAIL`` line per test) or directly:
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys

import pytest

from clawfano.suites import SuiteReport, verify

# (criterion, description, list of (suite, params))
CRITERIA = [
    (1, "critical numbers of PG, BB, AG-circ and K5",
     [("chi-ground-truth", {"pg_max": 6, "bb_max": 6, "agcirc_max": 6})]),
    (2, "doubling keeps chi and I3/F7 absence (all dim-4 sets, 10^4 dim-6 samples)",
     [("doubling-chi", {"exhaustive_dim": 4, "random_dim": 6, "samples": 10_000})]),
    (3, "exactly-3 evenness equals all-dims evenness (dims 3-4 exhaustive, 10^3 dim-5)",
     [("evenstructure-equiv", {"k": 3, "dims": (3, 4), "sample_dim": 5, "samples": 1000})]),
    (4, "twist(M, N) in E_3 iff N in E_2 (all dim-3 pairs)",
     [("twist-iff", {"k": 3, "dim": 3})]),
    (5, "chi of a semidoubling is chi(M|H0) + 1 (10^3 pairs, dim <= 6)",
     [("pushchi", {"samples": 1000, "min_dim": 2, "max_dim": 6})]),
    (6, "chi <= floor(n/2) + 1 on E_3, equality for the witnesses n = 2..10",
     [("chibound", {"n_max": 10, "census_max": 6})]),
    (7, "gsfalse family k = 1..5: E_3, claw/Fano-free, chi >= k",
     [("gsfalse", {"k_max": 5})]),
    (8, "claw/Fano-free iff certified outcome, every full-rank set of dim <= 4",
     [("maintech-exhaustive", {"n": 4, "full_rank_only": True})]),
    (9, "(I3, F7, K5)-free full-rank matroids have chi <= 2",
     [("main1", {"exhaustive_max": 4, "census_max": 6})]),
    (10, "E_3 members with chi >= 3 contain an induced K5 (census n <= 6)",
     [("k5-lemma", {"census_max": 6})]),
    (11, "chi(M) >= dim(N) + 4 gives an induced N (dim N <= 2, n <= 10)",
     [("hungry", {"n_max": 10, "n_dim_max": 2, "time_limit": 60.0})]),
    (12, "apex partition: B1 or B2 affine, every free dim-4 set and every (w, H)",
     [("technical-lemma", {"n": 4})]),
    (13, "oracle equivalences: claw scan, flat counts, affine recognition",
     [("oracles", {"flat_count_max": 4, "sample_max_dim": 5})]),
]


def run_criterion(number: int) -> tuple[bool, str, list[SuiteReport]]:
    _, desc, runs = next(c for c in CRITERIA if c[0] == number)
    reports = [verify(name, **params) for name, params in runs]
    ok = all(r.passed for r in reports)
    extra = _extra_checks(number, reports)
    if extra:
        ok = False
    parts = ", ".join(f"{r.suite}: {r.instances_checked} instances, {len(r.failures)} failures, "
                      f"{r.wall_time:.1f}s" for r in reports)
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {desc} [{parts}]"
    if extra:
        line += " " + "; ".join(extra)
    return ok, line, reports


def _extra_checks(number: int, reports: list[SuiteReport]) -> list[str]:
    """Criterion-specific checks on top of the suite verdicts."""
    problems = []
    rep = reports[0]
    if number == 2:
        exhaustive = sum(1 for iid, _ in rep.verdicts if iid.startswith("x4:"))
        if exhaustive != 2 ** 15:
            problems.append(f"only {exhaustive} dim-4 sets checked")
    if number == 3:
        if sum(1 for iid, _ in rep.verdicts if iid.startswith(("x3:", "x4:"))) != 128 + 32768:
            problems.append("exhaustive part incomplete")
    if number == 6:
        got = [rep.values.get(f"witness:{n}") for n in range(2, 11)]
        if got != [n // 2 + 1 for n in range(2, 11)]:
            problems.append(f"witness chi values {got}")
    if number == 8:
        if not any(v == "AgCircChain" for v in rep.values.values()):
            problems.append("no AG-circ outcome exercised")
    if number == 11:
        slowest = max((v for v in rep.values.values() if isinstance(v, float)), default=0.0)
        if slowest > 60.0:
            problems.append(f"slowest search {slowest:.1f}s")
        if not any(iid.startswith("N2:") for iid, _ in rep.verdicts):
            problems.append("no dim-2 N reached the hypothesis")
    return problems


@pytest.mark.slow
@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, line, reports = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
        for r in reports:
            for text in r.failures[:3]:
                print(text)
    assert ok, line


def main() -> int:
    all_ok = True
    for number, _, _ in CRITERIA:
        ok, line, _ = run_criterion(number)
        print(line, flush=True)
        all_ok &= ok
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
