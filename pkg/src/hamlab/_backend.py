"""Kernel selection: compiled extensions when importable, pure Python otherwise.

Set ``HAMLAB_PURE_PYTHON=1`` to force the fallback.  Compiled kernels handle
graphs up to 64 vertices; larger graphs always use the fallback.
"""
import os

from hamlab import _layered_py, _oracle_py

COMPILED_MAX_N = 64

_force_pure = os.environ.get("HAMLAB_PURE_PYTHON", "").strip() not in ("", "0")

try:
    if _force_pure:
        raise ImportError("pure Python forced by HAMLAB_PURE_PYTHON")
    from hamlab import _layered_core, _oracle_core
except ImportError:
    _oracle_core = None
    _layered_core = None

COMPILED = _oracle_core is not None and _layered_core is not None


def oracle_kernels(n):
    return _oracle_core if COMPILED and n <= COMPILED_MAX_N else _oracle_py


def layered_kernels(n):
    return _layered_core if COMPILED and n <= COMPILED_MAX_N else _layered_py


def backend_name():
    return "compiled" if COMPILED else "python"
