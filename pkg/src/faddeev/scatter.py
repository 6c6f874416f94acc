"""Scattering transform t(lambda), its Born approximation and the d-bar check."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .green.core import green_grid
from .ls import DEFAULT_HALF_WIDTH, CgoField, TorusGrid, ls_solve, periodize_green
from .potentials import PotentialSpec, eval_potential
from .spectral import SpectralParam, e_lambda, e_minus_lambda

DBAR_STEP = 1e-4
DBAR_TOL = 1e-10


@dataclass(frozen=True)
class ScatteringSample:
    lam: complex
    alpha: float
    t: complex
    converged: bool
    gmres_iterations: int
    ls_residual: float = float("nan")

    @property
    def real_valued(self) -> bool:
        """Im t is negligible (expected for real radial potentials)."""
        return abs(self.t.imag) <= 1e-4 * max(1.0, abs(self.t))


def scattering_transform(field: CgoField, q, p: SpectralParam) -> complex:
    """t(lambda) = h^2 sum e_lambda q mu over the grid."""
    grid = field.grid
    q = np.asarray(q, dtype=float)
    if not np.any(q):
        return 0j
    e = e_lambda(grid.points(), p)
    return complex(grid.h ** 2 * np.sum(e * q * field.mu))


def born_approx(q, p: SpectralParam, grid: TorusGrid) -> complex:
    """h^2 sum e_lambda q, i.e. t with mu replaced by 1."""
    q = np.asarray(q, dtype=float)
    if not np.any(q):
        return 0j
    return complex(grid.h ** 2 * np.sum(e_lambda(grid.points(), p) * q))


def potential_grid(spec: PotentialSpec, grid: TorusGrid) -> np.ndarray:
    return np.asarray(eval_potential(grid.points(), spec), dtype=float)


def solve_cgo(p: SpectralParam, q, grid: TorusGrid, tol: float = 1e-7, cache: bool = True):
    g = green_grid(p, grid.M, grid.s, cache=cache)
    return ls_solve(periodize_green(g, grid), q, tol=tol)


class DbarError(RuntimeError):
    def __init__(self, message, failing):
        super().__init__(message)
        self.failing = failing


# offsets of the nine parameters: centre, then +-d, +-2d on each axis
_STENCIL = (0, 1, 2, -1, -2, 1j, 2j, -1j, -2j)


def dbar_residual(p: SpectralParam, dlambda: float = DBAR_STEP, q=None, M: int = 7,
                  s: float = DEFAULT_HALF_WIDTH, tol: float = DBAR_TOL,
                  sign: float | None = None) -> float:
    """L2(D(0,1)) norm of dbar mu - sgn(|lam|-1) t/(4 pi conj lam) e_{-lam} conj mu.

    ``q`` is a PotentialSpec or a potential grid. ``sign`` overrides the
    sgn factor (used to check that the sign matters).
    """
    if not dlambda > 0:
        raise ValueError("dlambda must be positive")
    grid = TorusGrid(M, s)
    qg = potential_grid(q, grid) if isinstance(q, PotentialSpec) else np.asarray(q, dtype=float)
    params = [SpectralParam(p.lam + off * dlambda, p.energy, p.band) for off in _STENCIL]
    fields = [solve_cgo(pp, qg, grid, tol=tol, cache=False) for pp in params]
    failing = [pp.lam for pp, f in zip(params, fields) if not f.converged]
    if failing:
        raise DbarError(f"LS solve did not converge at lambda = {failing}", failing)
    mu = [f.mu for f in fields]
    d1 = (-mu[2] + 8 * mu[1] - 8 * mu[3] + mu[4]) / (12 * dlambda)
    d2 = (-mu[6] + 8 * mu[5] - 8 * mu[7] + mu[8]) / (12 * dlambda)
    dbar = 0.5 * (d1 + 1j * d2)
    t = scattering_transform(fields[0], qg, p)
    sgn = math.copysign(1.0, abs(p.lam) - 1.0) if sign is None else sign
    z = grid.points()
    rhs = sgn * t / (4 * math.pi * np.conj(p.lam)) * e_minus_lambda(z, p) * np.conj(mu[0])
    disk = np.abs(z) < 1.0
    return float(math.sqrt(grid.h ** 2 * np.sum(np.abs(dbar - rhs)[disk] ** 2)))
