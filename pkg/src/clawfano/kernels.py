"""Backend selection for the search kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise, or
when ``CLAWFANO_PURE_PYTHON`` is set to a non-empty value, the pure-Python
twins in ``_purekernels`` are used. Both expose the same two functions.
"""

from __future__ import annotations

import os

from . import _purekernels

SENTINEL = _purekernels.SENTINEL

try:
    from . import _speedups as compiled
except ImportError:  # extension not built
    compiled = None

pure = _purekernels

if compiled is not None and not os.environ.get("CLAWFANO_PURE_PYTHON"):
    _impl = compiled
    BACKEND = "cython"
else:
    _impl = pure
    BACKEND = "python"

find_flat_in = _impl.find_flat_in
embed_search = _impl.embed_search
