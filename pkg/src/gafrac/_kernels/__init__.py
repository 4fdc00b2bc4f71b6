"""Backend selection for the evaluation kernels.

Two interchangeable backends exist:

* ``fast`` -- a Cython extension compiled at install time,
* ``pure`` -- a numpy implementation, always available.

The compiled backend is preferred when importable.  Set the environment
variable ``GAFRAC_BACKEND`` to ``pure`` or ``fast`` to force a choice at
import time, or call :func:`set_backend` at runtime.
"""

import os

from . import pure

_BACKENDS = {"pure": pure}
try:
    from . import fast
    _BACKENDS["fast"] = fast
except ImportError:
    fast = None

_requested = os.environ.get("GAFRAC_BACKEND", "").strip().lower()
if _requested:
    if _requested not in _BACKENDS:
        raise ImportError(
            f"GAFRAC_BACKEND={_requested!r} but that backend is not available; "
            f"choices: {sorted(_BACKENDS)}"
        )
    _active = _BACKENDS[_requested]
else:
    _active = _BACKENDS.get("fast", pure)


def kernels():
    """Return the active backend module."""
    return _active


def active_backend():
    """Name of the active backend, 'fast' or 'pure'."""
    return _active.NAME


def available_backends():
    """Sorted names of the backends importable in this process."""
    return sorted(_BACKENDS)


def set_backend(name):
    """Switch the active backend; raises ValueError for unknown names."""
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; choices: {sorted(_BACKENDS)}"
        ) from None
