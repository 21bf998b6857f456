"""Backend selection for the F_q matrix kernels.

The compiled extension is used when it was built; otherwise the pure-Python
fallback is used.  Setting ``SUPERCHAR_PURE=1`` forces the fallback (for
benchmarking and for testing both paths).
"""

import os

from . import _kernels_py

try:
    if os.environ.get("SUPERCHAR_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

backend_name = "cython" if _compiled is not None else "python"
backend = BACKENDS[backend_name]

_cache: dict = {}


def tables(ctx, name=None):
    """FieldTables for ``ctx`` on the selected (or named) backend."""
    name = name or backend_name
    key = (name, ctx)
    t = _cache.get(key)
    if t is None:
        t = BACKENDS[name].FieldTables(ctx)
        _cache[key] = t
    return t
