"""Single-layer representation of g near the origin (domain D1a).

H(y) = e^{i zeta.y} g(y) - (i/4) H0(sqrt(E)|y|) solves the Helmholtz
equation, so inside |y| < R it is the single-layer potential of a density
placed on the slightly larger circle |y| = R + eps.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from ..numerics import SolveReport, gmres_solve, hankel1_0
from ..spectral import ReducedZeta
from .outer import eval_outer

LAYER_RADIUS = 1.6
LAYER_EPS = 0.1
LAYER_POINTS = 256
LAYER_TOL = 1e-10


class SingleLayerError(RuntimeError):
    def __init__(self, message, report: SolveReport):
        super().__init__(message)
        self.report = report


def _plane_wave(x1, x2, red: ReducedZeta):
    # e^{i zeta.y} with zeta = (k1, i k2)
    return np.exp(1j * red.k1 * x1 - red.k2 * x2)


def _helmholtz(r, energy):
    return 0.25j * hankel1_0(math.sqrt(energy) * np.asarray(r, dtype=float))


@dataclass(frozen=True)
class SingleLayerCache:
    reduced: ReducedZeta
    boundary_values: np.ndarray
    density: np.ndarray
    R: float = LAYER_RADIUS
    eps: float = LAYER_EPS
    report: SolveReport | None = None

    @property
    def sources(self):
        n = self.density.size
        ang = 2 * np.pi * np.arange(n) / n
        return (self.R + self.eps) * np.exp(1j * ang)

    def layer(self, w):
        """H at complex points ``w`` from the layer representation."""
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        src = self.sources
        weight = 2 * np.pi / src.size * (self.R + self.eps)
        out = np.empty(w.shape, dtype=complex)
        step = max(1, (1 << 18) // src.size)
        for start in range(0, w.size, step):
            blk = w.ravel()[start:start + step]
            kern = _helmholtz(np.abs(blk[:, None] - src[None, :]), self.reduced.energy)
            out.ravel()[start:start + step] = weight * (kern @ self.density)
        return out

    def green(self, w):
        """g_red at complex points ``w`` (0 < |w| < R)."""
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        red = self.reduced
        h = self.layer(w)
        return (h + _helmholtz(np.abs(w), red.energy)) / _plane_wave(w.real, w.imag, red)


def boundary_matrix(energy, R=LAYER_RADIUS, eps=LAYER_EPS, n=LAYER_POINTS):
    ang = 2 * np.pi * np.arange(n) / n
    y = R * np.exp(1j * ang)
    src = (R + eps) * np.exp(1j * ang)
    return (2 * np.pi / n) * (R + eps) * _helmholtz(np.abs(y[:, None] - src[None, :]), energy)


def single_layer_setup(red: ReducedZeta, tol: float = LAYER_TOL) -> SingleLayerCache:
    if not red.energy > 0:
        raise ValueError("energy must be positive")
    n = LAYER_POINTS
    ang = 2 * np.pi * np.arange(n) / n
    y = LAYER_RADIUS * np.exp(1j * ang)
    g = eval_outer(y.real, y.imag, red)
    hvals = _plane_wave(y.real, y.imag, red) * g - _helmholtz(LAYER_RADIUS, red.energy)
    S = boundary_matrix(red.energy)
    dens, report = gmres_solve(lambda v: S @ v, hvals, tol=tol, restart=n, maxit=4 * n)
    if not report.converged:
        raise SingleLayerError(
            f"boundary system did not converge (residual {report.final_residual:.3e})", report)
    dens.flags.writeable = False
    hvals.flags.writeable = False
    return SingleLayerCache(red, hvals, dens, report=report)


_caches: dict = {}
_locks: dict = {}
_registry_lock = threading.Lock()


def layer_cache(red: ReducedZeta) -> SingleLayerCache:
    """Shared cache per reduced zeta; construction is serialized per key."""
    key = (red.k1, red.k2, red.energy)
    with _registry_lock:
        hit = _caches.get(key)
        if hit is not None:
            return hit
        lock = _locks.setdefault(key, threading.Lock())
    with lock:
        with _registry_lock:
            hit = _caches.get(key)
        if hit is None:
            hit = single_layer_setup(ReducedZeta(red.k1, red.k2, 0.0, red.energy))
            with _registry_lock:
                _caches[key] = hit
    return hit


def clear_layer_caches():
    with _registry_lock:
        _caches.clear()
        _locks.clear()
