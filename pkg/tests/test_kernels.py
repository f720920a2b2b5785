from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from clawfano import kernels
from clawfano.gf2 import flat_table


needs_compiled = pytest.mark.skipif(kernels.compiled is None, reason="compiled extension not built")


@needs_compiled
@given(st.integers(1, 6), st.data())
def test_find_flat_in_backends_agree(n, data):
    allowed = np.array([0] + data.draw(st.lists(st.integers(0, 1), min_size=(1 << n) - 1,
                                                max_size=(1 << n) - 1)), dtype=np.uint8)
    for d in range(0, n + 1):
        a = kernels.pure.find_flat_in(allowed, n, d)
        b = kernels.compiled.find_flat_in(allowed, n, d)
        assert (a is None) == (b is None)
        if a is not None:
            assert list(a) == list(b)
        if d >= 1:
            table = flat_table(n, d)
            assert (a is not None) == bool(np.any(allowed[table].all(axis=1)))


@needs_compiled
@given(st.integers(1, 3), st.integers(1, 5), st.data())
def test_embed_search_backends_agree(ns, nt, data):
    if ns > nt:
        return
    src = np.array([0] + data.draw(st.lists(st.integers(0, 1), min_size=(1 << ns) - 1,
                                            max_size=(1 << ns) - 1)), dtype=np.uint8)
    tgt = np.array([kernels.SENTINEL] + data.draw(st.lists(st.integers(0, 1), min_size=(1 << nt) - 1,
                                                           max_size=(1 << nt) - 1)), dtype=np.uint8)
    a = kernels.pure.embed_search(src, ns, tgt, nt)
    b = kernels.compiled.embed_search(src, ns, tgt, nt)
    assert (a is None) == (b is None)
    if a is not None:
        assert list(a) == list(b)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_backend_selected_by_environment():
    import os
    import subprocess
    import sys
    code = ("from clawfano import kernels, chi, k5; "
            "print(kernels.BACKEND, chi(k5()))")
    env = dict(os.environ, CLAWFANO_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "3"]
