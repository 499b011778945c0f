"""Kernel selection: compiled extension when available, numpy fallback otherwise.

Import-time choice, overridable with MULTIWELL_PURE_PYTHON=1.  Both
implementations expose the same four callables and are exercised against each
other in the test suite; ``implementation()`` reports which one is active.
"""

import os

from . import _ref

_FORCED_PURE = os.environ.get("MULTIWELL_PURE_PYTHON", "") not in ("", "0")

if not _FORCED_PURE:
    try:
        from . import _tridiag as _impl
        _IMPLEMENTATION = "compiled"
    except ImportError:
        _impl = _ref
        _IMPLEMENTATION = "python"
else:
    _impl = _ref
    _IMPLEMENTATION = "python"

sturm_counts = _impl.sturm_counts
gershgorin_bounds = _impl.gershgorin_bounds
bisect_lowest = _impl.bisect_lowest
inverse_iteration = _impl.inverse_iteration


def implementation() -> str:
    """'compiled' when the C extension is active, else 'python'."""
    return _IMPLEMENTATION


def using_compiled() -> bool:
    return _IMPLEMENTATION == "compiled"
