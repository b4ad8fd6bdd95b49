"""Kernel backend selection.

The compiled Cython extension is preferred when present; setting the
environment variable ``NSOTKIT_PURE_PYTHON`` (to any non-empty value)
forces the numpy fallback.  Both backends expose the same three
callables; ``BACKEND`` names the one in use.
"""

import os

if os.environ.get("NSOTKIT_PURE_PYTHON"):
    from . import _fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as _impl

BACKEND = _impl.BACKEND_NAME
entropy_bits = _impl.entropy_bits
tv_distance_flat = _impl.tv_distance_flat
simplex_pivot_loop = _impl.simplex_pivot_loop

STATUS_OPTIMAL = 0
STATUS_UNBOUNDED = 1
STATUS_ITER_LIMIT = 2

__all__ = [
    "BACKEND",
    "entropy_bits",
    "tv_distance_flat",
    "simplex_pivot_loop",
    "STATUS_OPTIMAL",
    "STATUS_UNBOUNDED",
    "STATUS_ITER_LIMIT",
]
