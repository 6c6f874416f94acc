"""Lippmann-Schwinger-type equation mu = 1 - g_lambda * (q mu) on a torus grid."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .green.core import GreenGrid, green_eval_batch
from .numerics import SolveReport, fft2, gauss_legendre, gmres_solve, ifft2
from .spectral import SpectralParam

DEFAULT_HALF_WIDTH = 2.1
DEFAULT_CUTOFF = 2.05
LS_TOL = 1e-7
LS_RESTART = 50
LS_MAXIT = 400
ORIGIN_RULE = 24


@dataclass(frozen=True)
class TorusGrid:
    """Nodes -s + j h, j = 0..2^M - 1, on both axes; node 2^(M-1) is the origin."""

    M: int
    s: float = DEFAULT_HALF_WIDTH

    def __post_init__(self):
        if not (isinstance(self.M, (int, np.integer)) and 2 <= self.M <= 12):
            raise ValueError(f"grid exponent M must be an integer in [2, 12], got {self.M}")
        if not self.s > 2:
            raise ValueError("torus half-width must exceed 2 (wrap-around safety)")

    @property
    def n(self) -> int:
        return 1 << self.M

    @property
    def h(self) -> float:
        return 2.0 * self.s / self.n

    @property
    def nodes(self) -> np.ndarray:
        return -self.s + self.h * np.arange(self.n)

    def points(self) -> np.ndarray:
        """Complex node coordinates, ``[j1, j2] -> x1_j1 + i x2_j2``."""
        x = self.nodes
        return x[:, None] + 1j * x[None, :]

    def matches(self, g: GreenGrid) -> bool:
        return g.M == self.M and abs(g.s - self.s) <= 1e-14 * self.s


@dataclass(frozen=True)
class PeriodizedKernel:
    """g on the torus with origin at index (0, 0), truncated at ``cutoff``."""

    grid: TorusGrid
    lam: complex
    energy: float
    cutoff: float
    origin: str
    samples: np.ndarray
    spectrum: np.ndarray

    def apply(self, f):
        """h^2 * circular convolution of the kernel with node-ordered ``f``."""
        f = np.asarray(f, dtype=complex).reshape(self.grid.n, self.grid.n)
        return self.grid.h ** 2 * ifft2(self.spectrum * fft2(f))


def origin_cell_average(p: SpectralParam, h: float, n: int = ORIGIN_RULE) -> complex:
    """Mean of g over the grid cell [-h/2, h/2]^2 around its log singularity.

    The cell is cut into eight triangles with a vertex at 0; the Duffy map
    (u, v) -> (u, u v) removes the singularity from each.
    """
    a = 0.5 * h
    rule = gauss_legendre(n, 0.0, 1.0)
    u = rule.nodes[:, None]
    v = rule.nodes[None, :]
    w = np.outer(rule.weights, rule.weights) * a * a * u
    x = a * u * np.ones_like(v)
    y = a * u * v
    pts = np.stack([x + 1j * y, y + 1j * x, -x + 1j * y, -y + 1j * x,
                    x - 1j * y, y - 1j * x, -x - 1j * y, -y - 1j * x])
    vals = green_eval_batch(pts, p)
    return complex(np.sum(vals * w[None]) / (h * h))


def periodize_green(g: GreenGrid, grid: TorusGrid | None = None,
                    cutoff: float = DEFAULT_CUTOFF, origin: str = "cell") -> PeriodizedKernel:
    """Kernel on the torus: g for |z| <= cutoff, 0 beyond, origin moved to index (0, 0).

    ``origin="cell"`` replaces the origin sample by the cell mean of g
    (O(h^2) quadrature of the log singularity); ``origin="zero"`` keeps 0.
    """
    if grid is None:
        grid = TorusGrid(g.M, g.s)
    if not grid.matches(g):
        raise ValueError(f"Green grid (M={g.M}, s={g.s}) does not match torus (M={grid.M}, s={grid.s})")
    if not (0 < cutoff < grid.s):
        raise ValueError("cutoff must lie in (0, s)")
    if origin not in ("cell", "zero"):
        raise ValueError(f"origin must be 'cell' or 'zero', got {origin!r}")
    z = grid.points()
    node = np.where(np.abs(z) <= cutoff, g.samples, 0.0)
    mid = grid.n // 2
    node[mid, mid] = 0.0
    if origin == "cell":
        node[mid, mid] = origin_cell_average(SpectralParam(g.lam, g.energy, 0.0), grid.h)
    samples = np.fft.ifftshift(node)
    spectrum = fft2(samples)
    samples.flags.writeable = False
    spectrum.flags.writeable = False
    return PeriodizedKernel(grid, g.lam, g.energy, float(cutoff), origin, samples, spectrum)


@dataclass(frozen=True)
class CgoField:
    mu: np.ndarray
    lam: complex
    energy: float
    grid: TorusGrid
    report: SolveReport

    @property
    def converged(self) -> bool:
        return self.report.converged


def ls_solve(kernel: PeriodizedKernel, q, tol: float = LS_TOL, restart: int = LS_RESTART,
             maxit: int = LS_MAXIT) -> CgoField:
    """Solve (I + G Q) m = -G q for m = mu - 1 and return mu = 1 + m.

    Non-convergence is reported through ``field.converged`` (a sign of a
    nearby exceptional point), not raised.
    """
    grid = kernel.grid
    q = np.asarray(q)
    if q.shape != (grid.n, grid.n):
        raise ValueError(f"potential grid has shape {q.shape}, expected {(grid.n, grid.n)}")
    if np.iscomplexobj(q) and np.any(q.imag != 0):
        raise ValueError("potential must be real-valued")
    q = q.real.astype(float)
    rhs = -kernel.apply(q)

    def apply(m):
        m = m.reshape(grid.n, grid.n)
        return (m + kernel.apply(q * m)).ravel()

    m, report = gmres_solve(apply, rhs.ravel(), tol=tol, restart=restart, maxit=maxit)
    mu = 1.0 + m.reshape(grid.n, grid.n)
    mu.flags.writeable = False
    return CgoField(mu, kernel.lam, kernel.energy, grid, report)


def ls_residual(field: CgoField, kernel: PeriodizedKernel, q) -> float:
    """||mu - 1 + G(q mu)|| / ||mu|| on the grid."""
    if field.grid != kernel.grid:
        raise ValueError("field and kernel use different grids")
    mu = field.mu
    r = mu - 1.0 + kernel.apply(np.asarray(q, dtype=float) * mu)
    return float(np.linalg.norm(r) / np.linalg.norm(mu))
