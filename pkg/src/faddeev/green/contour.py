"""Contour-integral representations of g_zeta for reduced zeta and x1 >= 0.

Three variants are used:

* ``T1`` -- integral along the positive real axis, any sign of x2, x1 > 0;
* ``T2`` -- deformed onto the positive imaginary axis, x2 > 0;
* ``T3`` -- finite real leg [0, sqrt(E)+1] followed by a vertical leg
  downwards, x2 < 0.

Each is truncated at an upper limit chosen so that the neglected tail is
below ``E1(14) < 6e-8``. The integral of the real leg has a near-singular
point at ``t = sqrt(E)`` (branch point at distance k2 below the axis); the
rule there is graded with a sinh map.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..numerics import gauss_legendre
from ..spectral import DEFAULT_BAND, ReducedZeta
from . import _kernels

TAIL_ARGUMENT = 14.0
PANEL_ORDER = 16
MIN_PANEL_POINTS = 64
MAX_PANEL_POINTS = 1 << 17
CALIBRATION_TOL = 1e-8
VARIANTS = ("T1", "T2", "T3")

_TWO_QUARTER = 2.0 ** 0.25
_INV_2PI = 1.0 / (2.0 * math.pi)


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ContourSpec:
    variant: str
    upper_limit: float
    panel_points: int

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown contour variant {self.variant!r}")
        if not (math.isfinite(self.upper_limit) and self.upper_limit > 0):
            raise ValueError("upper limit must be finite and positive")
        if self.panel_points < 1:
            raise ValueError("panel_points must be positive")


def _principal_sqrt(z: complex) -> complex:
    # numpy/cmath principal branch: Re >= 0, sqrt(conj z) = conj sqrt(z)
    return complex(np.sqrt(complex(z)))


def t1_cosine(red: ReducedZeta) -> float:
    """cos(arg sqrt(a)) at t = 2|k1|, with a = (t + i k2)^2 - E."""
    t = 2.0 * abs(red.k1)
    a = (t + 1j * red.k2) ** 2 - red.energy
    return math.cos(np.angle(_principal_sqrt(a)))


def t3_cosine(red: ReducedZeta) -> float:
    """cos(arg sqrt(b)) at t = k2, with b = (sqrt(E) + 1 + (k2 - t) i)^2 - E."""
    c = math.sqrt(red.energy) + 1.0
    b = (c + 0j) ** 2 - red.energy
    return math.cos(np.angle(_principal_sqrt(b)))


def upper_limit_t1(x1, red: ReducedZeta):
    x = np.asarray(x1, dtype=float)
    if np.any(x <= 0):
        raise ValueError("T1 needs x1 > 0")
    out = np.maximum(TAIL_ARGUMENT * _TWO_QUARTER / (x * t1_cosine(red)), 2.0 * abs(red.k1))
    return float(out) if out.ndim == 0 else out


def upper_limit_t2(x2):
    x = np.asarray(x2, dtype=float)
    if np.any(x <= 0):
        raise ValueError("T2 needs x2 > 0")
    out = TAIL_ARGUMENT / x
    return float(out) if out.ndim == 0 else out


def upper_limit_t3(x1, x2, red: ReducedZeta):
    """Upper limit of the vertical leg: 14/|x2| + k2.

    Along the leg Re sqrt(b) stays bounded (it tends to sqrt(E)+1), so the
    factor exp(-x1 sqrt(b)) gives no growing decay and x1 does not enter;
    the tail is bounded by exp(x2 k2) E1(|x2| (T - k2)).
    """
    a = np.asarray(x1, dtype=float)
    b = np.asarray(x2, dtype=float)
    if np.any(a < 0) or np.any(b >= 0):
        raise ValueError("T3 needs x1 >= 0 and x2 < 0")
    out = TAIL_ARGUMENT / (-b) + red.k2 + 0.0 * a
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=64)
def unit_rule(n: int):
    """Composite Gauss-Legendre rule on [0, 1] with about ``n`` nodes."""
    panels = max(1, -(-n // PANEL_ORDER))
    base = gauss_legendre(PANEL_ORDER, 0.0, 1.0)
    offsets = np.arange(panels)[:, None] / panels
    u = (offsets + base.nodes[None, :] / panels).ravel()
    w = np.tile(base.weights / panels, panels)
    u.flags.writeable = False
    w.flags.writeable = False
    return u, w


def graded_rule(lo: float, hi: float, center: float, width: float, n: int):
    """Rule on [lo, hi] clustered around ``center`` via t = center + width*sinh(v)."""
    v0 = math.asinh((lo - center) / width)
    v1 = math.asinh((hi - center) / width)
    u, w = unit_rule(n)
    v = v0 + (v1 - v0) * u
    t = center + width * np.sinh(v)
    wt = (v1 - v0) * w * width * np.cosh(v)
    return t, wt


def _real_leg(t, red: ReducedZeta):
    """Node data for the real-axis integrand exp(i x2 t - x1 sqrt(a)) / sqrt(a)."""
    sa = np.sqrt(t * t + 2j * t * red.k2 - red.k1 * red.k1)
    return -sa, 1j * t, sa


def _cluster_width(red: ReducedZeta) -> float:
    return max(red.k2, 1e-12)


def contour_integral(x1, x2, red: ReducedZeta, variant: str, n: int, limit_scale: float = 1.0):
    """Complex integral I (before taking the real part) for each point."""
    x1 = np.ascontiguousarray(x1, dtype=float)
    x2 = np.ascontiguousarray(x2, dtype=float)
    root_e = math.sqrt(red.energy)
    u, w = unit_rule(n)
    if variant == "T1":
        upper = upper_limit_t1(x1, red) * limit_scale
        split = 2.0 * abs(red.k1)
        t, wt = graded_rule(0.0, split, root_e, _cluster_width(red), n)
        A, B, sa = _real_leg(t, red)
        total = _kernels.fixed_sum(x1, x2, A, B, wt / sa)
        upper = np.atleast_1d(upper)
        tail = upper > split
        if np.any(tail):
            total[tail] += _kernels.mapped_sum(_kernels.KIND_T1, x1[tail], x2[tail], split,
                                               upper[tail], u, w, red.k1, red.k2, red.energy)
        return total
    if variant == "T2":
        upper = np.atleast_1d(upper_limit_t2(x2) * limit_scale)
        return _kernels.mapped_sum(_kernels.KIND_T2, x1, x2, 0.0, upper, u, w,
                                   red.k1, red.k2, red.energy)
    if variant == "T3":
        upper = np.atleast_1d(upper_limit_t3(x1, x2, red) * limit_scale)
        c = root_e + 1.0
        t, wt = graded_rule(0.0, c, root_e, _cluster_width(red), n)
        A, B, sa = _real_leg(t, red)
        finite = _kernels.fixed_sum(x1, x2, A, B, wt / sa)
        vertical = _kernels.mapped_sum(_kernels.KIND_T3, x1, x2, 0.0, upper, u, w,
                                       red.k1, red.k2, red.energy)
        return finite - 1j * np.exp(1j * c * x2) * vertical
    raise ValueError(f"unknown contour variant {variant!r}")


def _check_variant(x1, x2, variant):
    if np.any(x1 < 0):
        raise ValueError("contour formulas need x1 >= 0 (apply the x1 switch first)")
    if variant == "T1" and np.any(x1 <= 0):
        raise ValueError("T1 needs x1 > 0")
    if variant == "T2" and np.any(x2 <= 0):
        raise ValueError("T2 needs x2 > 0")
    if variant == "T3" and np.any(x2 >= 0):
        raise ValueError("T3 needs x2 < 0")


def eval_contour_batch(x1, x2, red: ReducedZeta, variant: str, n: int | None = None,
                       limit_scale: float = 1.0):
    """g_zeta at points (x1, x2) in the reduced frame using one contour variant."""
    x1 = np.atleast_1d(np.asarray(x1, dtype=float))
    x2 = np.atleast_1d(np.asarray(x2, dtype=float))
    if variant not in VARIANTS:
        raise ValueError(f"unknown contour variant {variant!r}")
    _check_variant(x1, x2, variant)
    if n is None:
        n = panel_points(red, variant, float(np.max(np.hypot(x1, x2))))
    integral = contour_integral(x1, x2, red, variant, n, limit_scale)
    out = _INV_2PI * np.exp(-1j * x1 * red.k1) * integral.real
    if not np.all(np.isfinite(out)):
        raise FloatingPointError("non-finite contour value")
    return out


def eval_contour(z, red: ReducedZeta, variant: str, n: int | None = None,
                 limit_scale: float = 1.0) -> complex:
    """Single-point version of :func:`eval_contour_batch`; ``z`` is (x1, x2) or complex."""
    x1, x2 = _xy(z)
    return complex(eval_contour_batch([x1], [x2], red, variant, n, limit_scale)[0])


def _xy(z):
    if isinstance(z, complex) or np.iscomplexobj(z):
        z = complex(z)
        return z.real, z.imag
    x1, x2 = z
    return float(x1), float(x2)


def calibrate_panels(red: ReducedZeta, variant: str, probe, tol: float = CALIBRATION_TOL,
                     start: int = MIN_PANEL_POINTS, cap: int = MAX_PANEL_POINTS,
                     evaluate=None) -> int:
    """Smallest node count n (doubling from ``start``) with |I(2n) - I(n)| < tol.

    ``evaluate(n)`` defaults to :func:`eval_contour` at ``probe``.
    """
    if evaluate is None:
        def evaluate(n):
            return eval_contour(probe, red, variant, n)
    n = start
    value = evaluate(n)
    while n <= cap:
        finer = evaluate(2 * n)
        if abs(finer - value) < tol:
            return n
        n, value = 2 * n, finer
    raise CalibrationError(f"{variant} did not settle below {cap} points at probe {probe}")


# Calibration registry -------------------------------------------------------

_BUCKET_WIDTH = 0.05
_BASE_RADIUS = 3.0
_SECTOR_ANGLES = {
    "T1": (-math.atan(0.5), 0.0, math.atan(0.5)),
    "T2": (math.atan(0.5), 0.25 * math.pi + 0.5 * math.atan(0.5), 0.5 * math.pi),
    "T3": (-0.5 * math.pi, -0.25 * math.pi - 0.5 * math.atan(0.5), -math.atan(0.5)),
}
_registry: dict = {}
_registry_lock = threading.Lock()


def _magnitude(red: ReducedZeta) -> float:
    # |lambda| (or 1/|lambda|) recovered from reduced zeta: |k1| + k2 = r sqrt(E)
    return (abs(red.k1) + red.k2) / math.sqrt(red.energy)


def _reduced_for_r(r: float, energy: float) -> ReducedZeta:
    root = math.sqrt(energy)
    return ReducedZeta((r + 1 / r) * root / 2, (r - 1 / r) * root / 2, 0.0, energy)


def probe_points(variant: str, radius: float):
    pts = []
    for rad in (1.0, radius):
        for ang in _SECTOR_ANGLES[variant]:
            x1, x2 = rad * math.cos(ang), rad * math.sin(ang)
            if variant == "T1" and x1 <= 0:
                continue
            pts.append((max(x1, 0.0), x2))
    return pts


def radius_class(radius: float) -> int:
    if radius <= _BASE_RADIUS:
        return 0
    return int(math.ceil(math.log2(radius / _BASE_RADIUS)))


def panel_points(red: ReducedZeta, variant: str, radius: float = _BASE_RADIUS) -> int:
    """Calibrated node count, cached per (variant, energy, |lambda| bucket, radius class).

    The calibration runs on bucket-edge parameters, not on ``red`` itself, so
    the count does not depend on which parameter was seen first.
    """
    r = _magnitude(red)
    bucket = int(math.floor(math.log(r) / _BUCKET_WIDTH))
    rclass = radius_class(radius)
    key = (variant, round(red.energy, 12), bucket, rclass)
    with _registry_lock:
        hit = _registry.get(key)
    if hit is not None:
        return hit
    r_lo = max(math.exp(bucket * _BUCKET_WIDTH), 1.0 + DEFAULT_BAND)
    r_hi = max(math.exp((bucket + 1) * _BUCKET_WIDTH), r_lo * 1.001)
    probe_radius = _BASE_RADIUS * 2.0 ** rclass
    best = MIN_PANEL_POINTS
    for rr in (r_lo, r_hi):
        rep = _reduced_for_r(rr, red.energy)
        for probe in probe_points(variant, probe_radius):
            best = max(best, calibrate_panels(rep, variant, probe))
    with _registry_lock:
        _registry.setdefault(key, best)
    return best


def clear_calibration():
    with _registry_lock:
        _registry.clear()
