"""Kernel backend selection.

The compiled extension ``odc._kernels`` is preferred when it was built; the
pure-Python module ``odc._kernels_py`` implements the identical interface and
is used otherwise.  Set ``ODC_PURE_PYTHON=1`` to force the fallback (used by
the parity tests and the benchmark).
"""

import os

if os.environ.get("ODC_PURE_PYTHON"):
    from . import _kernels_py as kernels

    BACKEND_NAME = "pure-python (forced)"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND_NAME = "compiled"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND_NAME = "pure-python"


def backend_name():
    """Name of the kernel backend selected at import time."""
    return BACKEND_NAME
