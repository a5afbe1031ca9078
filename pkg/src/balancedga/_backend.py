"""Selects the compiled core at import time, falling back to pure Python.

Set ``BALANCEDGA_PURE_PYTHON=1`` to force the fallback.
"""

import os

core = None
if not os.environ.get("BALANCEDGA_PURE_PYTHON"):
    try:
        from . import _core as core
    except ImportError:
        core = None

BACKEND = "compiled" if core is not None else "python"
