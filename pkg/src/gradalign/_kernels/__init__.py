"""Hot kernels, compiled when available.

The Cython extension ``_ext`` is used if it was built and
``GRADALIGN_PURE_PYTHON`` is not set; otherwise the interpreted versions in
``_pure`` are used. ``BACKEND`` names the active implementation.
"""

import os

from . import _pure

try:
    if os.environ.get("GRADALIGN_PURE_PYTHON"):
        raise ImportError("pure-Python kernels forced by GRADALIGN_PURE_PYTHON")
    from . import _ext as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pure
    BACKEND = "python"

khop_layer_counts = _impl.khop_layer_counts
acn_increment = _impl.acn_increment
greedy_select = _impl.greedy_select


def available_backends():
    """Map of backend name to kernel module, for tests and benchmarks."""
    out = {"python": _pure}
    try:
        from . import _ext
        out["cython"] = _ext
    except ImportError:
        pass
    return out
