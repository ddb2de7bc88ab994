"""Selects the kernel backend: numba JIT kernels or the pure-numpy fallbacks.

The environment variable DRINFELD_AVG_BACKEND picks the path:

    auto   (default) numba if it imports, else numpy
    numba  require the JIT kernels
    numpy  force the vectorised numpy fallbacks

Both backends expose the same functions with identical outputs; the
benchmark under bench/ times them against each other.
"""

from __future__ import annotations

import contextlib
import importlib
import os

ENV_VAR = "DRINFELD_AVG_BACKEND"

_forced: str | None = None
_cached_name: str | None = None


def _resolve() -> str:
    choice = os.environ.get(ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be auto, numba or numpy, got {choice!r}")
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        importlib.import_module("drinfeld_avg.kernels_numba")
        return "numba"
    try:
        importlib.import_module("drinfeld_avg.kernels_numba")
        return "numba"
    except ImportError:
        return "numpy"


def active_backend() -> str:
    global _cached_name
    if _forced is not None:
        return _forced
    if _cached_name is None:
        _cached_name = _resolve()
    return _cached_name


def kernels():
    """The active kernel module."""
    return importlib.import_module(f"drinfeld_avg.kernels_{active_backend()}")


@contextlib.contextmanager
def use_backend(name: str):
    """Force a backend within a block (tests and the benchmark)."""
    global _forced
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba":
        importlib.import_module("drinfeld_avg.kernels_numba")
    prev = _forced
    _forced = name
    try:
        yield
    finally:
        _forced = prev
