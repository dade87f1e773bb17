"""Select the floating-point kernel backend at import time.

The compiled Cython extension is preferred when present; the numpy fallback
is used otherwise.  Set LOCPS_BACKEND=python (or =c) to force a choice, e.g.
for the backend benchmark.
"""

import os

_choice = os.environ.get("LOCPS_BACKEND", "auto").lower()

if _choice in ("python", "py", "numpy"):
    from . import _kernels_py as _impl
elif _choice in ("c", "cython", "compiled"):
    from . import _kernels as _impl  # ImportError here means the ext is not built
elif _choice == "auto":
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl
else:
    raise RuntimeError(f"unknown LOCPS_BACKEND value: {_choice!r}")

det = _impl.det_f64
eigvals = _impl.eigvals_f64
eigh = _impl.eigh_f64
drop_one_min_eigs = _impl.drop_one_min_eigs_f64
backend_name = _impl.BACKEND
