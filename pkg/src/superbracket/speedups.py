"""Kernel selection: compiled extension if built, pure Python otherwise.

Set ``SUPERBRACKET_PURE=1`` to force the pure-Python kernels (used by the
benchmark and for debugging).
"""

import os

from . import _speedups_py as pure

compiled = None
if not os.environ.get("SUPERBRACKET_PURE"):
    try:
        from . import _speedups as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

impl = compiled if compiled is not None else pure

IMPLEMENTATION = impl.IMPLEMENTATION
merge_factors = impl.merge_factors
odd_inversion_sign = impl.odd_inversion_sign
rank_mod_p = impl.rank_mod_p
