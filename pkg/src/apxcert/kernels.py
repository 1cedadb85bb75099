"""Backend selection for the enumeration kernels.

The compiled module is used when it was built; set ``APXCERT_PURE_PYTHON=1``
to force the reference implementation.
"""

import os

from . import _kernels_py as python_backend

compiled_backend = None
if os.environ.get("APXCERT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend

BACKEND = _active.BACKEND
sat_values = _active.sat_values
sat_best = _active.sat_best
cut_values = _active.cut_values
cut_best = _active.cut_best
vc_best = _active.vc_best
setcover_best = _active.setcover_best
held_karp = _active.held_karp
min_matching = _active.min_matching
congestion_best = _active.congestion_best

__all__ = [
    "BACKEND", "sat_values", "sat_best", "cut_values", "cut_best", "vc_best",
    "setcover_best", "held_karp", "min_matching", "congestion_best",
    "python_backend", "compiled_backend",
]
