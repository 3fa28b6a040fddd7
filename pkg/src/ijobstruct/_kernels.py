"""Selects the canonicalization kernel backend at import time.

The compiled Cython module is preferred when present; setting IJOBSTRUCT_PURE=1
forces the pure-Python fallback (useful for benchmarking and debugging).
"""

import os

if os.environ.get("IJOBSTRUCT_PURE") == "1":
    from ijobstruct._canon_py import BACKEND, canonical_form, row_set_symmetries
else:
    try:
        from ijobstruct._canon import BACKEND, canonical_form, row_set_symmetries
    except ImportError:
        from ijobstruct._canon_py import (
            BACKEND,
            canonical_form,
            row_set_symmetries,
        )

__all__ = ["BACKEND", "canonical_form", "row_set_symmetries"]
