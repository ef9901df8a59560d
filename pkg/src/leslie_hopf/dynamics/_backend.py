"""Pick the integrator kernels: the compiled extension when it imports,
otherwise the pure-Python mirror.

``LESLIE_HOPF_BACKEND`` overrides the choice: ``cython`` insists on the
extension (import errors propagate), ``python`` forces the fallback and
``auto`` (the default) prefers the extension.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py

ENV_VAR = "LESLIE_HOPF_BACKEND"
BACKENDS = ("auto", "cython", "python")


def _load_compiled() -> ModuleType:
    from . import _kernels
    return _kernels


def compiled_available() -> bool:
    try:
        _load_compiled()
    except ImportError:
        return False
    return True


def kernels(name: str | None = None) -> ModuleType:
    """Kernel module for ``name`` (defaults to the environment setting)."""
    name = (name or os.environ.get(ENV_VAR) or "auto").lower()
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose one of {', '.join(BACKENDS)}")
    if name == "python":
        return _kernels_py
    if name == "cython":
        return _load_compiled()
    try:
        return _load_compiled()
    except ImportError:
        return _kernels_py


def backend_name(module: ModuleType | None = None) -> str:
    module = module or kernels()
    return "python" if module is _kernels_py else "cython"
