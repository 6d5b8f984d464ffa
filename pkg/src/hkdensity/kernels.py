"""Rank-over-F_p kernel, compiled when available.

Set ``HKDENSITY_PURE_PYTHON=1`` to force the numpy implementation.
"""

import os

from hkdensity import _rank_py

if os.environ.get("HKDENSITY_PURE_PYTHON") == "1":
    rank_mod_p = _rank_py.rank_mod_p
    BACKEND = "python"
else:
    try:
        from hkdensity._rank_ext import rank_mod_p
        BACKEND = "compiled"
    except ImportError:
        rank_mod_p = _rank_py.rank_mod_p
        BACKEND = "python"

__all__ = ["rank_mod_p", "BACKEND"]
