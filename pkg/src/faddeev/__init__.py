"""Positive-energy Faddeev Green's function, CGO solutions and scattering transforms."""
from .green import green_eval, green_grid
from .ls import TorusGrid, ls_solve, periodize_green
from .potentials import PotentialSpec, RadialBump, smallness_bound
from .scatter import born_approx, dbar_residual, scattering_transform
from .spectral import SpectralParam

__version__ = "0.1.0"

__all__ = [
    "green_eval", "green_grid", "TorusGrid", "ls_solve", "periodize_green", "PotentialSpec",
    "RadialBump", "smallness_bound", "born_approx", "dbar_residual", "scattering_transform",
    "SpectralParam", "__version__",
]
