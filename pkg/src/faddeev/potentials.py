"""Radial test potentials q1_alpha, q2_alpha and the norm-smallness bound."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import optimize

from .numerics import bessel_y0, gauss_legendre


@dataclass(frozen=True)
class RadialBump:
    """phi(r) = 1 on [0, R1], p((r - R1)/(R2 - R1)) between, 0 beyond R2.

    p(t) = 1 - 10 t^3 + 15 t^4 - 6 t^5 has vanishing first and second
    derivatives at both ends, so phi is C^2.
    """

    R1: float = 0.8
    R2: float = 0.9

    def __post_init__(self):
        if not (0 < self.R1 < self.R2 < 1):
            raise ValueError(f"need 0 < R1 < R2 < 1, got R1={self.R1}, R2={self.R2}")

    def _t(self, r):
        return np.clip((np.asarray(r, dtype=float) - self.R1) / (self.R2 - self.R1), 0.0, 1.0)

    def value(self, r):
        t = self._t(r)
        return 1.0 - t ** 3 * (10.0 - 15.0 * t + 6.0 * t * t)

    def d1(self, r):
        t = self._t(r)
        return -30.0 * t * t * (1.0 - t) ** 2 / (self.R2 - self.R1)

    def d2(self, r):
        t = self._t(r)
        return -60.0 * t * (1.0 - t) * (1.0 - 2.0 * t) / (self.R2 - self.R1) ** 2


def bump_phi(r, bump: RadialBump = RadialBump()):
    if np.any(np.asarray(r) < 0):
        raise ValueError("radius must be nonnegative")
    out = bump.value(r)
    return float(out) if out.ndim == 0 else out


class PotentialKind(str, enum.Enum):
    Q1 = "q1"
    Q2 = "q2"


@dataclass(frozen=True)
class PotentialSpec:
    """q1 = alpha phi;  q2 = Lap(sqrt sigma)/sqrt sigma + alpha phi.

    sigma = 1 + sigma_amplitude * phi_sigma with its own bump profile.
    """

    kind: PotentialKind
    alpha: float
    bump: RadialBump = field(default_factory=RadialBump)
    sigma_bump: RadialBump = field(default_factory=lambda: RadialBump(0.4, 0.7))
    sigma_amplitude: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "kind", PotentialKind(self.kind))
        object.__setattr__(self, "alpha", float(self.alpha))
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if not self.sigma_amplitude > -1:
            raise ValueError("sigma must stay positive (amplitude > -1)")

    def with_alpha(self, alpha: float) -> "PotentialSpec":
        return PotentialSpec(self.kind, alpha, self.bump, self.sigma_bump, self.sigma_amplitude)


def conductivity_term(r, spec: PotentialSpec):
    """Lap(sqrt sigma)/sqrt sigma for the radial sigma of ``spec``."""
    r = np.asarray(r, dtype=float)
    b, a = spec.sigma_bump, spec.sigma_amplitude
    sig = 1.0 + a * b.value(r)
    s1 = a * b.d1(r)
    s2 = a * b.d2(r)
    root = np.sqrt(sig)
    f1 = s1 / (2.0 * root)
    f2 = s2 / (2.0 * root) - s1 * s1 / (4.0 * sig * root)
    # phi_sigma is flat near r = 0, so f'/r is taken as 0 there (limit 2 f''(0) = 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        radial = np.where(r > 0, f1 / np.where(r > 0, r, 1.0), f2)
    return (f2 + radial) / root


def eval_potential(z, spec: PotentialSpec):
    """q(z) for points given as complex numbers or (..., 2) arrays."""
    z = np.asarray(z)
    if np.iscomplexobj(z):
        r = np.abs(z)
    elif z.ndim >= 1 and z.shape[-1] == 2:
        r = np.hypot(z[..., 0], z[..., 1])
    else:
        r = np.abs(z.astype(complex))
    out = spec.alpha * spec.bump.value(r)
    if spec.kind is PotentialKind.Q2:
        out = out + conductivity_term(r, spec)
    return float(out) if np.ndim(out) == 0 else out


# Smallness bound ------------------------------------------------------------

_R_MAX = 200.0
_INNER_NODES = 512


def _y0_term(r):
    return np.abs(np.sqrt(r) * bessel_y0(r))


@lru_cache(maxsize=1)
def _arc_rule():
    return gauss_legendre(_INNER_NODES, 0.0, math.pi)


def _arc_integral(r, phi0):
    """|sqrt(r) int_{phi0}^{phi0+pi} exp(i r sin phi) dphi| by 512-point Gauss-Legendre."""
    rule = _arc_rule()
    r = np.asarray(r, dtype=float)
    ph = np.asarray(phi0, dtype=float)[..., None] + rule.nodes
    vals = np.exp(1j * r[..., None] * np.sin(ph)) @ rule.weights
    return np.abs(np.sqrt(r) * vals)


@lru_cache(maxsize=1)
def c_hat_terms(r_points: int = 100_000, r_points_arc: int = 2000, phi_points: int = 65):
    """The two maxima in c-hat: (max |sqrt r Y0|, max |sqrt r arc integral|).

    Grid scan then local refinement. The arc integral has the symmetries
    phi0 -> phi0 + pi (conjugate) and phi0 -> pi - phi0 (conjugate up to a
    reflection), so phi0 is scanned over [0, pi/2] only.
    """
    r = np.linspace(_R_MAX / r_points, _R_MAX, r_points)
    v = _y0_term(r)
    i = int(np.argmax(v))
    lo, hi = r[max(i - 1, 0)], r[min(i + 1, r.size - 1)]
    r_star = optimize.golden(lambda x: -float(_y0_term(x)), brack=(lo, r[i], hi)) \
        if lo < r[i] < hi else r[i]
    y0_max = max(float(v[i]), float(_y0_term(r_star)))

    ra = np.linspace(_R_MAX / r_points_arc, _R_MAX, r_points_arc)
    phis = np.linspace(0.0, 0.5 * math.pi, phi_points)
    best = (-1.0, 0.0, 0.0)
    for p0 in phis:
        vals = _arc_integral(ra, np.full(ra.shape, p0))
        j = int(np.argmax(vals))
        if vals[j] > best[0]:
            best = (float(vals[j]), ra[j], p0)
    res = optimize.minimize(lambda x: -float(_arc_integral(x[0], x[1])), [best[1], best[2]],
                            method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-14})
    arc_max = max(best[0], -float(res.fun))
    return y0_max, arc_max


def c_hat() -> float:
    y0_max, arc_max = c_hat_terms()
    return 0.25 * y0_max + arc_max / (4.0 * math.pi)


def d_eps(eps: float) -> float:
    return 2.0 * math.pi / ((1.0 + eps) * eps)


def smallness_bound(eps: float = 1.0) -> float:
    """1 / (c-hat (4 pi/3 + D_eps)); |alpha| below this rules out exceptional points."""
    if not eps > 0:
        raise ValueError("epsilon must be positive")
    return 1.0 / (c_hat() * (4.0 * math.pi / 3.0 + d_eps(eps)))
