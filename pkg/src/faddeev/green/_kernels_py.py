"""Pure numpy contour sums (fallback for the compiled kernels).

Both functions evaluate, for every plane point ``p``, a quadrature sum of
one of the contour integrands. Points are processed in chunks so the
point-by-node work array stays bounded.
"""
from __future__ import annotations

import numpy as np

KIND_T1 = 1
KIND_T2 = 2
KIND_T3 = 3

_CHUNK_ELEMS = 1 << 20


def _chunks(npts, nnodes):
    step = max(1, _CHUNK_ELEMS // max(nnodes, 1))
    for start in range(0, npts, step):
        yield slice(start, min(npts, start + step))


def fixed_sum(x1, x2, A, B, C, num_threads=0):
    """out[p] = sum_j C[j] * exp(x1[p] * A[j] + x2[p] * B[j])."""
    x1 = np.ascontiguousarray(x1, dtype=float)
    x2 = np.ascontiguousarray(x2, dtype=float)
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    C = np.asarray(C, dtype=complex)
    out = np.empty(x1.size, dtype=complex)
    for sl in _chunks(x1.size, A.size):
        expo = x1[sl, None] * A[None, :] + x2[sl, None] * B[None, :]
        out[sl] = (np.exp(expo) * C[None, :]).sum(axis=1)
    return out


def _integrand(kind, t, x1, x2, k1, k2, energy):
    if kind == KIND_T1:
        sa = np.sqrt(t * t + 2j * t * k2 - k1 * k1)
        return np.exp(1j * x2 * t - x1 * sa) / sa
    if kind == KIND_T2:
        s = np.sqrt(t * t + 2.0 * t * k2 + k1 * k1)
        return np.exp(-x2 * t - 1j * x1 * s) / s
    if kind == KIND_T3:
        c = np.sqrt(energy) + 1.0
        sb = np.sqrt((c + 1j * (k2 - t)) ** 2 - energy)
        return np.exp(x2 * t - x1 * sb) / sb
    raise ValueError(f"unknown integrand kind {kind}")


def mapped_sum(kind, x1, x2, lo, hi, u, w, k1, k2, energy, num_threads=0):
    """Quadrature of integrand ``kind`` over [lo, hi[p]] with the unit rule (u, w)."""
    x1 = np.ascontiguousarray(x1, dtype=float)
    x2 = np.ascontiguousarray(x2, dtype=float)
    hi = np.ascontiguousarray(hi, dtype=float)
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    out = np.empty(x1.size, dtype=complex)
    for sl in _chunks(x1.size, u.size):
        length = (hi[sl] - lo)[:, None]
        t = lo + length * u[None, :]
        f = _integrand(kind, t, x1[sl, None], x2[sl, None], k1, k2, energy)
        out[sl] = (f * (length * w[None, :])).sum(axis=1)
    return out
