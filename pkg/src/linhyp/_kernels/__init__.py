"""Search kernel backends.

The compiled extension is preferred when present; the pure-Python backend is
a drop-in replacement with no width limits. Set LINHYP_BACKEND=py or
LINHYP_BACKEND=c to force a choice (forcing "c" raises if the extension is
not built).
"""

import os

from . import py_backend

_forced = os.environ.get("LINHYP_BACKEND", "").strip().lower()

if _forced == "py":
    backend = py_backend
elif _forced == "c":
    from . import c_backend as backend  # type: ignore[no-redef]
else:
    try:
        from . import c_backend as backend  # type: ignore[no-redef]
    except ImportError:
        backend = py_backend

BACKEND_NAME = backend.NAME


def get_backend(name=None):
    """Return a kernel backend by name ("c" or "py"); default is the active one."""
    if name is None:
        return backend
    if name == "py":
        return py_backend
    if name == "c":
        from . import c_backend

        return c_backend
    raise ValueError(f"unknown backend {name!r}")
