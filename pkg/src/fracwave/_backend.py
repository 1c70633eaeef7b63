"""Select the compiled kernels when importable, else the pure-Python twin.

Set ``FRACWAVE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
import warnings

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and not os.environ.get("FRACWAVE_PURE_PYTHON"):
    kernels = _compiled
    BACKEND = "cython"
else:
    kernels = _kernels_py
    BACKEND = "python"


def available() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def get(name: str | None = None):
    """Kernel module for ``name`` ('cython' or 'python'); default is the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            warnings.warn("compiled kernels unavailable; using pure-Python fallback")
            return _kernels_py
        return _compiled
    raise ValueError(f"unknown backend {name!r}")
