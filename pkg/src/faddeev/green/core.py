"""Full-plane evaluation of the Faddeev Green's function g_lambda."""
from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from ..spectral import SpectralParam, reduce_lambda
from .domains import DomainTag, classify_domains
from .layer import layer_cache
from .outer import eval_outer

SCALE_D1B = 5.0
SCALE_D1C = 2.0


def _as_points(z):
    z = np.asarray(z)
    if np.iscomplexobj(z) or z.ndim == 0 or z.shape[-1] != 2:
        return np.asarray(z, dtype=complex)
    return z[..., 0] + 1j * z[..., 1]


def green_eval_batch(z, p: SpectralParam):
    """g_lambda at an array of complex points ``z`` (all nonzero)."""
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.ravel()
    red = reduce_lambda(p)
    w = z * np.exp(1j * red.theta)
    tags = classify_domains(w.real, w.imag)
    out = np.empty(z.shape, dtype=complex)

    sel = tags == DomainTag.D1a
    if np.any(sel):
        out[sel] = layer_cache(red).green(w[sel])
    for tag, factor in ((DomainTag.D1b, SCALE_D1B), (DomainTag.D1c, SCALE_D1C)):
        sel = tags == tag
        if np.any(sel):
            ws = factor * w[sel]
            out[sel] = eval_outer(ws.real, ws.imag, red.scaled(1.0 / factor))
    sel = tags >= DomainTag.A2
    if np.any(sel):
        out[sel] = eval_outer(w[sel].real, w[sel].imag, red)
    return out.reshape(shape)


def green_eval(z, p: SpectralParam) -> complex:
    """g_lambda(z) for one point given as (x1, x2) or complex."""
    pt = complex(_as_points(z))
    if pt == 0:
        raise ValueError("z = 0 is the singular point of g")
    return complex(green_eval_batch(np.array([pt]), p)[0])


@dataclass(frozen=True)
class GreenGrid:
    """g_lambda on the nodes -s + j h (j = 0..2^M-1) of both axes.

    ``samples[j1, j2]`` is the value at (x1_j1, x2_j2); the origin node
    (index 2^(M-1)) holds 0.
    """

    lam: complex
    energy: float
    M: int
    s: float
    samples: np.ndarray

    @property
    def n(self) -> int:
        return 1 << self.M

    @property
    def h(self) -> float:
        return 2.0 * self.s / self.n

    @property
    def nodes(self) -> np.ndarray:
        return -self.s + self.h * np.arange(self.n)


class GridEvaluationError(RuntimeError):
    pass


def compute_green_grid(p: SpectralParam, M: int, s: float) -> GreenGrid:
    if not (5 <= M <= 10):
        raise ValueError(f"grid exponent M must be in [5, 10], got {M}")
    if not s > 0:
        raise ValueError("torus half-width must be positive")
    n = 1 << M
    x = -s + (2.0 * s / n) * np.arange(n)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    z = X1 + 1j * X2
    mid = n // 2
    mask = np.ones((n, n), dtype=bool)
    mask[mid, mid] = False
    samples = np.zeros((n, n), dtype=complex)
    try:
        samples[mask] = green_eval_batch(z[mask], p)
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        bad = _locate_failure(z[mask], p)
        raise GridEvaluationError(f"g evaluation failed at node {bad}: {exc}") from exc
    samples.flags.writeable = False
    return GreenGrid(p.lam, p.energy, M, float(s), samples)


def _locate_failure(points, p):
    for pt in points:
        try:
            green_eval_batch(np.array([pt]), p)
        except (ArithmeticError, RuntimeError, ValueError):
            return (pt.real, pt.imag)
    return None


class GreenGridCache:
    """LRU cache of grids keyed by (lambda, E, M, s)."""

    def __init__(self, capacity: int = 8):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, p: SpectralParam, M: int, s: float) -> GreenGrid:
        key = (p.lam, p.energy, M, float(s))
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                return self._data[key]
        grid = compute_green_grid(p, M, s)
        with self._lock:
            grid = self._data.setdefault(key, grid)
            self._data.move_to_end(key)
            while len(self._data) > self.capacity:
                self._data.popitem(last=False)
        return grid

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)


default_cache = GreenGridCache()


def green_grid(p: SpectralParam, M: int, s: float = 2.1, cache: bool = True) -> GreenGrid:
    if cache:
        return default_cache.get(p, M, s)
    return compute_green_grid(p, M, s)
