"""Kernel selection: the compiled extension when built, else pure Python.

Set ``CFGWALK_PURE=1`` to force the pure-Python kernels.
"""

import os

from . import _kernels_py

if os.environ.get("CFGWALK_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

reduce_codes = _impl.reduce_codes
concat_codes = _impl.concat_codes
cyk_fill = _impl.cyk_fill

__all__ = ["BACKEND", "reduce_codes", "concat_codes", "cyk_fill"]
