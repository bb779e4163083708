"""Backend selection for the mod-p kernels.

DGFORGE_KERNELS=numba   force the jitted backend (ImportError if unavailable)
DGFORGE_KERNELS=numpy   force the pure-numpy fallback
DGFORGE_KERNELS=auto    (default) numba if importable, else numpy
"""

from __future__ import annotations

import os

_requested = os.environ.get("DGFORGE_KERNELS", "auto")
if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"DGFORGE_KERNELS must be auto|numba|numpy, got {_requested!r}"
    )

if _requested == "numpy":
    from . import _fp_numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _fp_numba as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        from . import _fp_numpy as _impl

        BACKEND = "numpy"

rref_mod = _impl.rref_mod
matmul_mod = _impl.matmul_mod
spin_mod = _impl.spin_mod


def current_backend() -> str:
    return BACKEND
