"""Backend selection for the table kernels.

The compiled module is used when importable; set ``AOWF_PURE_PYTHON=1`` to
force the pure-Python fallback.
"""

import os

from . import _kernels_py

try:
    if os.environ.get("AOWF_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"

assoc_violations = _impl.assoc_violations
weak_assoc_violations = _impl.weak_assoc_violations
comm_violations = _impl.comm_violations
first_collision = _impl.first_collision


def backends():
    """Every importable backend, keyed by name (for parity tests and benchmarks)."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["compiled"] = _kernels
    except ImportError:
        pass
    return out
