"""Spectral parameter algebra: lambda <-> zeta, rotation to reduced form, e_lambda."""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

DEFAULT_BAND = 0.005
ZETA_CONSISTENCY_TOL = 1e-10


@dataclass(frozen=True)
class SpectralParam:
    """Complex spectral parameter ``lam`` at energy ``energy > 0``.

    Values with ``abs(abs(lam) - 1) < band`` are rejected: the reduced
    imaginary part of zeta vanishes on the unit circle.
    """

    lam: complex
    energy: float = 1.0
    band: float = DEFAULT_BAND

    def __post_init__(self):
        lam = complex(self.lam)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "energy", float(self.energy))
        if lam == 0:
            raise ValueError("spectral parameter must be nonzero")
        if not self.energy > 0:
            raise ValueError(f"energy must be positive, got {self.energy}")
        if abs(abs(lam) - 1.0) < self.band:
            raise ValueError(
                f"|lambda| = {abs(lam):.6g} lies inside the unit-circle exclusion band {self.band}")

    @property
    def sqrt_energy(self) -> float:
        return math.sqrt(self.energy)


@dataclass(frozen=True)
class ZetaVector:
    zeta1: complex
    zeta2: complex

    def dot(self) -> complex:
        return self.zeta1 * self.zeta1 + self.zeta2 * self.zeta2


@dataclass(frozen=True)
class ReducedZeta:
    """zeta rotated by ``theta`` into ``[k1, 0] + i [0, k2]`` with ``k2 > 0``."""

    k1: float
    k2: float
    theta: float
    energy: float

    def scaled(self, factor: float) -> "ReducedZeta":
        """Reduced parameters of ``factor * zeta`` (energy scales by ``factor**2``)."""
        return ReducedZeta(self.k1 * factor, self.k2 * factor, self.theta,
                           self.energy * factor * factor)


def zeta_from_lambda(p: SpectralParam) -> ZetaVector:
    lam = p.lam
    if lam == 0:
        raise ValueError("lambda = 0 has no zeta")
    root = p.sqrt_energy
    inv = 1.0 / lam
    return ZetaVector((lam + inv) * root / 2, (inv - lam) * 1j * root / 2)


def lambda_from_zeta(z: ZetaVector, energy: float) -> complex:
    if not energy > 0:
        raise ValueError("energy must be positive")
    mismatch = abs(z.dot() - energy)
    if mismatch > ZETA_CONSISTENCY_TOL * energy:
        raise ValueError(f"zeta . zeta differs from E={energy} by {mismatch:.3e}")
    lam = (z.zeta1 + 1j * z.zeta2) / math.sqrt(energy)
    if abs(abs(lam) - 1.0) < DEFAULT_BAND:
        warnings.warn(f"lambda={lam} lies on the excluded unit circle", RuntimeWarning,
                      stacklevel=2)
    return lam


def reduce_zeta(z: ZetaVector) -> ReducedZeta:
    energy_c = z.dot()
    energy = energy_c.real
    if not energy > 0:
        raise ValueError(f"zeta . zeta = {energy_c} is not a positive energy")
    re = np.array([z.zeta1.real, z.zeta2.real])
    im = np.array([z.zeta1.imag, z.zeta2.imag])
    k2 = float(np.hypot(*im))
    if k2 <= 1e-14 * max(1.0, float(np.hypot(*re))):
        raise ValueError("Im(zeta) = 0: physical scattering regime is not supported")
    phi = math.atan2(im[1], im[0])
    theta = math.remainder(0.5 * math.pi - phi, 2 * math.pi)
    if theta <= -math.pi:
        theta += 2 * math.pi
    c, s = math.cos(theta), math.sin(theta)
    k1_rot = c * re[0] - s * re[1]
    k1 = math.copysign(math.sqrt(energy + k2 * k2), k1_rot)
    return ReducedZeta(k1, k2, theta, energy)


def reduce_lambda(p: SpectralParam) -> ReducedZeta:
    return reduce_zeta(zeta_from_lambda(p))


def rotate(z, theta: float):
    """Rotate plane points given as complex numbers counter-clockwise by ``theta``."""
    return np.asarray(z) * cmath.exp(1j * theta) if np.ndim(z) else complex(z) * cmath.exp(1j * theta)


def _phase(z, p: SpectralParam):
    z = np.asarray(z, dtype=complex)
    lam = p.lam
    return p.sqrt_energy * ((lam * np.conj(z)).real + (z / lam).real)


def e_lambda(z, p: SpectralParam):
    """exp(i sqrt(E)/2 (lam conj(z) + conj(lam) z + z/lam + conj(z)/conj(lam)))."""
    out = np.exp(1j * _phase(z, p))
    return complex(out) if out.ndim == 0 else out


def e_minus_lambda(z, p: SpectralParam):
    out = np.exp(-1j * _phase(z, p))
    return complex(out) if out.ndim == 0 else out
