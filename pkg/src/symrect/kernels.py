"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when importable; otherwise the
pure-Python ``_pykernels`` twin. Setting ``SYMRECT_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _pykernels as python

compiled = None
if not os.environ.get("SYMRECT_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_NAMES = ("rect_count", "band_max", "restricted_max", "beta_search", "probe_load",
          "build_node_cols")


def backends():
    """Available backends as ``{name: module}``."""
    out = {"python": python}
    if compiled is not None:
        out["cython"] = compiled
    return out


def set_backend(name: str) -> str:
    """Switch every kernel to backend ``name``; returns the previous one.

    Callers inside the package look kernels up on this module at call
    time, so the switch applies to everything built afterwards too.
    """
    global BACKEND
    impl = backends().get(name)
    if impl is None:
        raise ValueError("backend %r not available" % name)
    g = globals()
    for attr in _NAMES:
        g[attr] = getattr(impl, attr)
    prev, BACKEND = BACKEND, name
    return prev


BACKEND = "cython" if compiled is not None else "python"
set_backend(BACKEND)
