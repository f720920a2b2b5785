"""Compare the compiled and pure-Python search kernels on typical workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--end-to-end]

Both backends are called directly, so one process measures both.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from clawfano import kernels
from clawfano.matroid import Matroid, k5
from clawfano.recognition import _target_labels
from clawfano.structure import chibound_witness


def _allowed(m: Matroid) -> np.ndarray:
    a = np.array(m.member, dtype=np.uint8) ^ 1
    a[0] = 0
    return a


def workloads():
    rng = np.random.default_rng(0)
    for n in (6, 8, 10):
        m = chibound_witness(n)
        d = n - (n // 2 + 1)
        yield f"find_flat_in chibound({n}) d={d}", "find_flat_in", (_allowed(m), n, d)
        yield f"find_flat_in chibound({n}) d={d + 1} (fails)", "find_flat_in", (_allowed(m), n, d + 1)
    for _ in range(1):
        n = 7
        bits = rng.integers(0, 2, size=(1 << n) - 1)
        m = Matroid.from_points(n, [i + 1 for i in np.flatnonzero(bits)])
        yield "find_flat_in random dim 7, d=2", "find_flat_in", (_allowed(m), n, 2)
    for n in (6, 8, 10):
        m = chibound_witness(n)
        yield f"embed_search K5 -> chibound({n})", "embed_search", (
            np.array(k5().member, dtype=np.uint8), 4, _target_labels(m.member), n)


def timeit(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def end_to_end(suite: str, params: list[str]) -> None:
    """Time one CLI suite run under each backend (the backend is fixed at import)."""
    print(f"\nend to end: clawfano verify {suite} {' '.join(params)}")
    for label, extra in (("compiled", {}), ("pure", {"CLAWFANO_PURE_PYTHON": "1"})):
        env = dict(os.environ, **extra)
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-m", "clawfano.cli", "verify", suite, *params],
                       env=env, check=True, capture_output=True)
        print(f"  {label:9s} {time.perf_counter() - t0:8.2f}s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--end-to-end", action="store_true", help="also time a whole suite under each backend")
    args = ap.parse_args()
    if kernels.compiled is None:
        raise SystemExit("compiled extension not built; run `pip install --no-build-isolation -e .`")
    print(f"{'workload':45s} {'compiled':>12s} {'pure':>12s} {'speedup':>9s}")
    for name, fn, wargs in workloads():
        c = timeit(getattr(kernels.compiled, fn), wargs, args.repeat)
        p = timeit(getattr(kernels.pure, fn), wargs, args.repeat)
        assert (getattr(kernels.compiled, fn)(*wargs) is None) == (getattr(kernels.pure, fn)(*wargs) is None)
        print(f"{name:45s} {c * 1e3:10.3f}ms {p * 1e3:10.3f}ms {p / max(c, 1e-9):8.1f}x")
    if args.end_to_end:
        end_to_end("hungry", [])
        end_to_end("doubling-chi", ["samples=2000"])


if __name__ == "__main__":
    main()
