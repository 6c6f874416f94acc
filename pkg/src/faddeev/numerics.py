"""Shared numerical kernels.

Order-zero Bessel functions, the exponential integral E1, Gauss-Legendre
rules, a restarted GMRES solver and the 2-D FFT convention used by the
rest of the package.

FFT convention: ``fft2`` is unscaled, ``ifft2`` carries the ``1/N**2``
factor, so ``ifft2(fft2(f)) == f`` and ``sum|fft2(f)|**2 == N**2 sum|f|**2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

EULER_GAMMA = 0.57721566490153286061

# series below this, Miller recurrence up to _MILLER_MAX, Hankel asymptotics beyond
_SERIES_MAX = 8.0
_MILLER_MAX = 25.0
_MILLER_START = 80
_SERIES_TERMS = 42


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _j0y0_series(x, want_y):
    q = 0.25 * x * x
    term = np.ones_like(x)
    j0 = np.ones_like(x)
    ysum = np.zeros_like(x)
    harmonic = 0.0
    for k in range(1, _SERIES_TERMS):
        term = term * (-q) / (k * k)
        j0 = j0 + term
        if want_y:
            harmonic += 1.0 / k
            ysum = ysum - harmonic * term
    if not want_y:
        return j0, None
    y0 = (2.0 / math.pi) * ((np.log(0.5 * x) + EULER_GAMMA) * j0 + ysum)
    return j0, y0


def _j0y0_miller(x, want_y):
    # backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalised by J0 + 2 sum J_2k = 1
    nxt = np.zeros_like(x)
    cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    neumann = np.zeros_like(x)
    for k in range(_MILLER_START, 0, -1):
        prev = (2.0 * k / x) * cur - nxt
        nxt, cur = cur, prev
        order = k - 1
        if order > 0 and order % 2 == 0:
            norm = norm + 2.0 * cur
            if want_y:
                half = order // 2
                neumann = neumann + (-1.0) ** half * cur / half
    norm = norm + cur
    j0 = cur / norm
    if not want_y:
        return j0, None
    neumann = neumann / norm
    y0 = (2.0 / math.pi) * ((np.log(0.5 * x) + EULER_GAMMA) * j0 - 2.0 * neumann)
    return j0, y0


def _j0y0_asymptotic(x, want_y):
    p = np.ones_like(x)
    q = np.zeros_like(x)
    coeff = 1.0
    inv8x = 1.0 / (8.0 * x)
    power = np.ones_like(x)
    prev_mag = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 60):
        coeff *= (2 * k - 1) ** 2 / k
        power = power * inv8x
        term = coeff * power
        # stop each abscissa once its terms start growing (optimal truncation)
        active &= term < prev_mag
        prev_mag = term
        if not active.any():
            break
        t = np.where(active, term, 0.0)
        if k % 2 == 1:
            q = q + (-1.0 if k % 4 == 1 else 1.0) * t
        else:
            p = p + (-1.0 if k % 4 == 2 else 1.0) * t
    chi = x - 0.25 * math.pi
    amp = np.sqrt(2.0 / (math.pi * x))
    j0 = amp * (p * np.cos(chi) - q * np.sin(chi))
    y0 = amp * (p * np.sin(chi) + q * np.cos(chi)) if want_y else None
    return j0, y0


def _j0y0(x, want_y):
    out_j = np.empty_like(x)
    out_y = np.empty_like(x) if want_y else None
    bands = (
        (x <= _SERIES_MAX, _j0y0_series),
        ((x > _SERIES_MAX) & (x <= _MILLER_MAX), _j0y0_miller),
        (x > _MILLER_MAX, _j0y0_asymptotic),
    )
    for mask, fn in bands:
        if mask.any():
            j, y = fn(x[mask], want_y)
            out_j[mask] = j
            if want_y:
                out_y[mask] = y
    return out_j, out_y


def bessel_j0(x):
    """Bessel function of the first kind, order zero, for ``x >= 0``."""
    arr, scalar = _as_array(x)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("bessel_j0 needs finite nonnegative arguments")
    j, _ = _j0y0(np.atleast_1d(arr), want_y=False)
    return float(j[0]) if scalar else j.reshape(arr.shape)


def bessel_y0(x):
    """Bessel function of the second kind, order zero, for ``x > 0``."""
    arr, scalar = _as_array(x)
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise ValueError("bessel_y0 is defined for positive finite arguments only")
    _, y = _j0y0(np.atleast_1d(arr), want_y=True)
    return float(y[0]) if scalar else y.reshape(arr.shape)


def hankel1_0(x):
    """Hankel function of the first kind, order zero: J0(x) + i Y0(x)."""
    arr, scalar = _as_array(x)
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise ValueError("hankel1_0 is defined for positive finite arguments only")
    j, y = _j0y0(np.atleast_1d(arr), want_y=True)
    h = j + 1j * y
    return complex(h[0]) if scalar else h.reshape(arr.shape)


def _e1_scalar(x: float) -> float:
    if x <= 1.0:
        total = 0.0
        term = 1.0
        k = 1
        while True:
            term *= -x / k
            inc = -term / k
            total += inc
            if abs(inc) < 1e-17 * abs(total):
                break
            k += 1
        return total - EULER_GAMMA - math.log(x)
    # modified Lentz evaluation of the continued fraction
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def expint_e1(x):
    """Exponential integral E1(x) = int_x^inf exp(-s)/s ds for ``x > 0``."""
    arr, scalar = _as_array(x)
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise ValueError("expint_e1 is defined for positive finite arguments only")
    if scalar:
        return _e1_scalar(float(arr))
    return np.array([_e1_scalar(float(v)) for v in arr.ravel()]).reshape(arr.shape)


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]):
        return np.sum(self.weights * f(self.nodes))


def gauss_legendre(n: int, a: float, b: float) -> QuadratureRule:
    """n-point Gauss-Legendre rule mapped to [a, b]."""
    if int(n) != n or n < 1:
        raise ValueError(f"need a positive number of nodes, got {n}")
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    x, w = np.polynomial.legendre.leggauss(int(n))
    half = 0.5 * (b - a)
    nodes = a + half * (x + 1.0)
    weights = half * w
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes, weights, (float(a), float(b)))


@dataclass(frozen=True)
class SolveReport:
    iterations: int
    final_residual: float
    converged: bool


def _check_finite(v):
    if not np.all(np.isfinite(v)):
        raise FloatingPointError("operator produced non-finite values")
    return v


def gmres_solve(apply: Callable[[np.ndarray], np.ndarray], rhs, tol: float = 1e-7,
                restart: int = 50, maxit: int = 400, x0=None):
    """Restarted GMRES for ``apply(x) = rhs``.

    Returns ``(x, SolveReport)``. Running out of iterations is reported
    through ``converged=False``; it is not an error.
    """
    b = np.asarray(rhs, dtype=complex).ravel()
    if not np.all(np.isfinite(b)):
        raise FloatingPointError("right-hand side is not finite")
    if tol <= 0 or restart < 1 or maxit < 1:
        raise ValueError("tol, restart and maxit must be positive")
    n = b.size
    x = np.zeros(n, dtype=complex) if x0 is None else np.array(x0, dtype=complex).ravel()
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return np.zeros(n, dtype=complex), SolveReport(0, 0.0, True)

    def matvec(v):
        return _check_finite(np.asarray(apply(v), dtype=complex).ravel())

    iterations = 0
    r = b - matvec(x) if x0 is not None else b.copy()
    rel = np.linalg.norm(r) / bnorm
    m = min(restart, n)
    while rel > tol and iterations < maxit:
        beta = np.linalg.norm(r)
        basis = np.zeros((m + 1, n), dtype=complex)
        hess = np.zeros((m + 1, m), dtype=complex)
        cs = np.zeros(m, dtype=complex)
        sn = np.zeros(m, dtype=complex)
        g = np.zeros(m + 1, dtype=complex)
        g[0] = beta
        basis[0] = r / beta
        k_used = 0
        breakdown = False
        for k in range(m):
            if iterations >= maxit:
                break
            w = matvec(basis[k])
            iterations += 1
            for j in range(k + 1):
                hess[j, k] = np.vdot(basis[j], w)
                w = w - hess[j, k] * basis[j]
            hnext = np.linalg.norm(w)
            hess[k + 1, k] = hnext
            for j in range(k):
                tmp = np.conj(cs[j]) * hess[j, k] + np.conj(sn[j]) * hess[j + 1, k]
                hess[j + 1, k] = -sn[j] * hess[j, k] + cs[j] * hess[j + 1, k]
                hess[j, k] = tmp
            denom = math.hypot(abs(hess[k, k]), abs(hess[k + 1, k]))
            k_used = k + 1
            if denom == 0.0:
                breakdown = True
                k_used = k
                break
            cs[k] = hess[k, k] / denom
            sn[k] = hess[k + 1, k] / denom
            hess[k, k] = denom
            hess[k + 1, k] = 0.0
            g[k + 1] = -sn[k] * g[k]
            g[k] = np.conj(cs[k]) * g[k]
            if abs(g[k + 1]) / bnorm <= tol:
                break
            if hnext <= 1e-14 * beta:
                breakdown = True
                break
            basis[k + 1] = w / hnext
        if k_used > 0:
            y = np.linalg.solve(np.triu(hess[:k_used, :k_used]), g[:k_used])
            x = x + basis[:k_used].T @ y
        r = b - matvec(x)
        rel = np.linalg.norm(r) / bnorm
        if breakdown:
            break
    converged = bool(rel <= tol)
    return x, SolveReport(iterations, float(rel), converged)


def _check_pow2_grid(grid):
    arr = np.asarray(grid)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square 2-D grid, got shape {arr.shape}")
    for side in arr.shape:
        if side < 1 or side & (side - 1):
            raise ValueError(f"grid side {side} is not a power of two")
    return arr


def fft2(grid):
    """Unscaled forward 2-D transform of a power-of-two grid."""
    return np.fft.fft2(_check_pow2_grid(grid))


def ifft2(grid):
    """Inverse of :func:`fft2` (scaled by ``1/N**2``)."""
    return np.fft.ifft2(_check_pow2_grid(grid))
