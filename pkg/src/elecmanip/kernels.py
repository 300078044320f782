"""Backend selection for the exhaustive SAT kernels.

The compiled extension is used when it was built; otherwise (or when
``ELECMANIP_PURE_PYTHON`` is set) the pure-Python twin is loaded.
"""
import os

from elecmanip import _sat_py as pure

compiled = None
if not os.environ.get("ELECMANIP_PURE_PYTHON"):
    try:
        from elecmanip import _sat as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

first_satisfying = _impl.first_satisfying
count_satisfying = _impl.count_satisfying
check = _impl.check
