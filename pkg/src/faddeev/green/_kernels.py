"""Backend selection for the contour sums.

The compiled extension is used when it imports; ``FADDEEV_BACKEND=python``
forces the numpy fallback. :func:`use_backend` switches at runtime (tests,
benchmarks).
"""
from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KIND_T1 = _kernels_py.KIND_T1
KIND_T2 = _kernels_py.KIND_T2
KIND_T3 = _kernels_py.KIND_T3

_BACKENDS = {"python": _kernels_py}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_active = None
num_threads = int(os.environ.get("FADDEEV_THREADS", os.cpu_count() or 1))


def available():
    return sorted(_BACKENDS)


def use_backend(name: str):
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available (have {available()})")
    _active = name


def backend() -> str:
    return _active


def fixed_sum(x1, x2, A, B, C):
    return _BACKENDS[_active].fixed_sum(x1, x2, A, B, C, num_threads)


def mapped_sum(kind, x1, x2, lo, hi, u, w, k1, k2, energy):
    return _BACKENDS[_active].mapped_sum(kind, x1, x2, lo, hi, u, w, k1, k2, energy,
                                         num_threads)


_requested = os.environ.get("FADDEEV_BACKEND", "")
use_backend(_requested if _requested else ("cython" if _ckernels is not None else "python"))
