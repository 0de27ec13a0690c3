"""Backend selection for the reduction kernel.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Set ``PERMHOM_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py

if os.environ.get("PERMHOM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

reduce_complex = _impl.reduce_complex
project_chain = _impl.project_chain
lift_chain = _impl.lift_chain


def get_backend(name):
    """Return the kernel module by name ("python" or "cython")."""
    if name == "python":
        return _kernel_py
    if name == "cython":
        from . import _kernel

        return _kernel
    raise ValueError(f"unknown backend {name!r}")
