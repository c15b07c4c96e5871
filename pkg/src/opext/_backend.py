"""Selects the compiled elimination kernel when available.

Set ``OPEXT_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

from __future__ import annotations

import os

from . import _modp_py

if os.environ.get("OPEXT_PURE_PYTHON", "") not in ("", "0"):
    rref_modp = _modp_py.rref_modp
    COMPILED = False
else:
    try:
        from ._modp import rref_modp  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:  # pragma: no cover - depends on build
        rref_modp = _modp_py.rref_modp
        COMPILED = False

__all__ = ["rref_modp", "COMPILED"]
