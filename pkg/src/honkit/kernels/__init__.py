"""Kernel backend selection.

The compiled Cython kernels (`_fast`) are used when the extension was built;
otherwise the pure-Python twins take over. Set HONKIT_PURE=1 to force the
fallback (used by the parity tests and the benchmark).
"""

import os

from . import pure

if os.environ.get("HONKIT_PURE") == "1":
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _fast as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

build_layers = _impl.build_layers
loglik_eval = _impl.loglik_eval
prediction_eval = _impl.prediction_eval
bfs_stats = _impl.bfs_stats


def active_backend() -> str:
    """Name of the kernel backend in use: 'compiled' or 'pure'."""
    return BACKEND
