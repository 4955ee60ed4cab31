"""Team-table kernels: the compiled extension when it was built, else pure Python.

``BACKEND`` names the implementation in use.  Set ``TEAMLOGIC_PURE_PYTHON=1``
to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("TEAMLOGIC_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

flat_table = _impl.flat_table
limp_table = _impl.limp_table
image_table = _impl.image_table
cover_table = _impl.cover_table
choice_table = _impl.choice_table
negate_table = _impl.negate_table
implies_table = _impl.implies_table

__all__ = [
    "BACKEND",
    "choice_table",
    "cover_table",
    "flat_table",
    "image_table",
    "implies_table",
    "limp_table",
    "negate_table",
]
