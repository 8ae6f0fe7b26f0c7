"""Kernel backend selection.

The compiled extension (`abmodes._kernels_c`) is preferred when importable;
otherwise the pure-Python twin is used.  Override with the environment
variable ``ABMODES_BACKEND``:

* ``auto`` (default) -- compiled if available, else pure Python;
* ``c``              -- compiled, ImportError if the extension is missing;
* ``python``         -- force the pure-Python kernels.
"""

import os

_choice = os.environ.get("ABMODES_BACKEND", "auto").lower()
if _choice not in ("auto", "c", "python"):
    raise RuntimeError(
        f"ABMODES_BACKEND must be 'auto', 'c' or 'python', got {_choice!r}"
    )

if _choice == "python":
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_c as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        if _choice == "c":
            raise
        from . import _kernels_py as _impl

        BACKEND = "python"

gamma_kernel = _impl.gamma
bessel_kernel = _impl.bessel_j
product_panel_kernel = _impl.gauss15_product_panel
