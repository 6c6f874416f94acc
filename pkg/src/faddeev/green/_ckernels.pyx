# cython: language_level=3
"""Compiled contour sums; same contract as ``_kernels_py``.

Complex arithmetic is spelled out on real/imaginary parts so the build
does not depend on C99 complex support. The principal square root keeps
Re >= 0 and maps +0 imaginary parts on the negative axis to +i.
"""
import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport sqrt, exp, cos, sin, fabs, hypot, copysign

cnp.import_array()


cdef inline void csqrt_(double a, double b, double* re, double* im) noexcept nogil:
    cdef double r = hypot(a, b)
    cdef double s
    if r == 0.0:
        re[0] = 0.0
        im[0] = 0.0
        return
    if a >= 0.0:
        s = sqrt(0.5 * (r + a))
        re[0] = s
        im[0] = b / (2.0 * s)
    else:
        s = sqrt(0.5 * (r - a))
        im[0] = copysign(s, b)
        re[0] = fabs(b) / (2.0 * s)


def fixed_sum(x1, x2, A, B, C, int num_threads=0):
    cdef const double[::1] X1 = np.ascontiguousarray(x1, dtype=np.float64)
    cdef const double[::1] X2 = np.ascontiguousarray(x2, dtype=np.float64)
    cdef const double complex[::1] AA = np.ascontiguousarray(A, dtype=np.complex128)
    cdef const double complex[::1] BB = np.ascontiguousarray(B, dtype=np.complex128)
    cdef const double complex[::1] CC = np.ascontiguousarray(C, dtype=np.complex128)
    cdef Py_ssize_t npts = X1.shape[0]
    cdef Py_ssize_t nn = AA.shape[0]
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] O = out
    cdef Py_ssize_t p, j
    cdef double er, ei, mag, cr, ci, sr, si
    cdef int nt = num_threads if num_threads > 0 else 1
    for p in prange(npts, nogil=True, num_threads=nt, schedule="static"):
        sr = 0.0
        si = 0.0
        for j in range(nn):
            er = X1[p] * AA[j].real + X2[p] * BB[j].real
            ei = X1[p] * AA[j].imag + X2[p] * BB[j].imag
            mag = exp(er)
            cr = mag * cos(ei)
            ci = mag * sin(ei)
            sr = sr + cr * CC[j].real - ci * CC[j].imag
            si = si + cr * CC[j].imag + ci * CC[j].real
        O[p] = sr + 1j * si
    return out


def mapped_sum(int kind, x1, x2, double lo, hi, u, w, double k1, double k2, double energy,
               int num_threads=0):
    cdef const double[::1] X1 = np.ascontiguousarray(x1, dtype=np.float64)
    cdef const double[::1] X2 = np.ascontiguousarray(x2, dtype=np.float64)
    cdef const double[::1] HI = np.ascontiguousarray(hi, dtype=np.float64)
    cdef const double[::1] U = np.ascontiguousarray(u, dtype=np.float64)
    cdef const double[::1] W = np.ascontiguousarray(w, dtype=np.float64)
    if kind not in (1, 2, 3):
        raise ValueError(f"unknown integrand kind {kind}")
    cdef Py_ssize_t npts = X1.shape[0]
    cdef Py_ssize_t nn = U.shape[0]
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] O = out
    cdef Py_ssize_t p, j
    cdef double length, t, wt, ar, ai, sr_, si_, er, ei, mag, fr, fi, den, accr, acci
    cdef double c = sqrt(energy) + 1.0
    cdef double x1p, x2p, ur, ui
    cdef int nt = num_threads if num_threads > 0 else 1
    for p in prange(npts, nogil=True, num_threads=nt, schedule="static"):
        length = HI[p] - lo
        x1p = X1[p]
        x2p = X2[p]
        accr = 0.0
        acci = 0.0
        for j in range(nn):
            t = lo + length * U[j]
            wt = length * W[j]
            if kind == 1:
                # sqrt(t^2 + 2 i t k2 - k1^2); exp(i x2 t - x1 sqrt) / sqrt
                csqrt_(t * t - k1 * k1, 2.0 * t * k2, &sr_, &si_)
                er = -x1p * sr_
                ei = x2p * t - x1p * si_
            elif kind == 2:
                sr_ = sqrt(t * t + 2.0 * t * k2 + k1 * k1)
                si_ = 0.0
                er = -x2p * t
                ei = -x1p * sr_
            else:
                # b = (c + i (k2 - t))^2 - E
                ur = c
                ui = k2 - t
                csqrt_(ur * ur - ui * ui - energy, 2.0 * ur * ui, &sr_, &si_)
                er = x2p * t - x1p * sr_
                ei = -x1p * si_
            mag = exp(er)
            fr = mag * cos(ei)
            fi = mag * sin(ei)
            # divide by (sr_ + i si_)
            den = sr_ * sr_ + si_ * si_
            accr = accr + wt * (fr * sr_ + fi * si_) / den
            acci = acci + wt * (fi * sr_ - fr * si_) / den
        O[p] = accr + 1j * acci
    return out
