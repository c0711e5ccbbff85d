"""Backend selection for the numerical kernels.

The compiled extension is used when it was built; otherwise (or when
``POLYHARM_PURE_PYTHON`` is set to a non-empty value) the numpy versions
are used. Both expose identical functions.
"""

import os

from . import _pykernels

if os.environ.get("POLYHARM_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

horner = _impl.horner
horner_deriv = _impl.horner_deriv
winding_sum = _impl.winding_sum
first_self_crossing = _impl.first_self_crossing
first_crossing_between = _impl.first_crossing_between
ray_fan_escape = _impl.ray_fan_escape


def backends():
    """Map of every importable backend name to its module."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
