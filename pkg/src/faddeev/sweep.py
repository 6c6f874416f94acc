"""(alpha, lambda) sweeps of the scattering transform and exceptional-point detection."""
from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .green.core import GreenGridCache, compute_green_grid
from .ls import DEFAULT_HALF_WIDTH, LS_TOL, TorusGrid, ls_residual, ls_solve, periodize_green
from .potentials import PotentialSpec, RadialBump
from .scatter import ScatteringSample, potential_grid, scattering_transform, solve_cgo
from .spectral import DEFAULT_BAND, SpectralParam

CSV_COLUMNS = ("alpha", "lambda_re", "lambda_im", "t_re", "t_im", "converged",
               "gmres_iterations", "ls_residual")
MEDIAN_FACTOR = 10.0


@dataclass(frozen=True)
class SweepConfig:
    lambda_min: float = 1.01
    lambda_max: float = 4.5
    lambda_count: int = 88
    alpha_min: float = -35.0
    alpha_max: float = 35.0
    alpha_count: int = 15
    alpha_values: tuple | None = None
    M: int = 7
    energy: float = 1.0
    potential: str = "q1"
    R1: float = 0.8
    R2: float = 0.9
    s: float = DEFAULT_HALF_WIDTH
    tol: float = LS_TOL
    workers: int = 1
    cache: bool = True
    symmetry_check: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.lambda_count < 1 or self.alpha_count < 1:
            raise ValueError("counts must be at least 1")
        if self.lambda_min > self.lambda_max or self.alpha_min > self.alpha_max:
            raise ValueError("range minimum exceeds maximum")
        if self.alpha_values is not None:
            object.__setattr__(self, "alpha_values", tuple(float(a) for a in self.alpha_values))
            if not self.alpha_values:
                raise ValueError("alpha_values must not be empty")
        for lam in self.lambdas():
            if abs(abs(lam) - 1.0) < DEFAULT_BAND:
                raise ValueError(f"lambda = {lam} lies in the unit-circle exclusion band")
        if self.workers < 1:
            raise ValueError("workers must be positive")

    def lambdas(self) -> np.ndarray:
        return np.linspace(self.lambda_min, self.lambda_max, self.lambda_count)

    def alphas(self) -> np.ndarray:
        if self.alpha_values is not None:
            return np.array(self.alpha_values, dtype=float)
        return np.linspace(self.alpha_min, self.alpha_max, self.alpha_count)

    def potential_spec(self, alpha: float) -> PotentialSpec:
        return PotentialSpec(self.potential, alpha, RadialBump(self.R1, self.R2))


@dataclass(frozen=True)
class SweepReport:
    config: SweepConfig
    alphas: tuple
    lambdas: tuple
    samples: tuple  # samples[i_alpha][j_lambda]
    brackets: dict
    timing: dict = field(default_factory=dict, compare=False)
    symmetry: tuple | None = None

    def profile(self, alpha: float):
        i = self._alpha_index(alpha)
        return [(s.lam.real, s.t.real, s.converged) for s in self.samples[i]]

    def _alpha_index(self, alpha):
        for i, a in enumerate(self.alphas):
            if a == alpha or math.isclose(a, alpha, rel_tol=0, abs_tol=1e-12):
                return i
        raise KeyError(f"alpha {alpha} not in sweep")


def detect_exceptional(profile):
    """Brackets (lam_lo, lam_hi) of suspected exceptional points along a profile.

    ``profile`` is a sequence of (lambda, t, converged) sorted by lambda.
    Triggers: (a) t changes sign between adjacent converged samples while
    |t| exceeds 10x the median |t| at either end; (b) runs of two or more
    unconverged samples. Triggers within one grid step are merged.
    """
    prof = [(float(np.real(l)), float(np.real(t)), bool(c)) for l, t, c in profile]
    n = len(prof)
    if n < 2:
        return []
    lam = [p[0] for p in prof]
    conv_abs = [abs(p[1]) for p in prof if p[2] and math.isfinite(p[1])]
    med = float(np.median(conv_abs)) if conv_abs else 0.0
    raw = []
    for i in range(n - 1):
        (l0, t0, c0), (l1, t1, c1) = prof[i], prof[i + 1]
        if c0 and c1 and np.sign(t0) != np.sign(t1) and t0 != 0 and t1 != 0 \
                and max(abs(t0), abs(t1)) > MEDIAN_FACTOR * med:
            raw.append((i, i + 1))
    i = 0
    while i < n:
        if not prof[i][2]:
            j = i
            while j + 1 < n and not prof[j + 1][2]:
                j += 1
            if j > i:
                raw.append((max(i - 1, 0), min(j + 1, n - 1)))
            i = j + 1
        else:
            i += 1
    raw.sort()
    merged = []
    for lo, hi in raw:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return [(lam[lo], lam[hi]) for lo, hi in merged]


def _lambda_column(cfg: SweepConfig, lam: float, qgrids, cache: GreenGridCache | None):
    p = SpectralParam(lam, cfg.energy)
    grid = TorusGrid(cfg.M, cfg.s)
    g = cache.get(p, cfg.M, cfg.s) if cache is not None else compute_green_grid(p, cfg.M, cfg.s)
    kernel = periodize_green(g, grid)
    out = []
    for alpha, q in qgrids:
        try:
            f = ls_solve(kernel, q, tol=cfg.tol)
            t = scattering_transform(f, q, p)
            res = ls_residual(f, kernel, q)
            out.append(ScatteringSample(complex(lam), float(alpha), t, f.converged,
                                        f.report.iterations, res))
        except (ArithmeticError, RuntimeError, ValueError):
            out.append(ScatteringSample(complex(lam), float(alpha), complex(math.nan, math.nan),
                                        False, 0, math.nan))
    return out


_sweep_cache = GreenGridCache()


def run_sweep(cfg: SweepConfig) -> SweepReport:
    start = time.perf_counter()
    grid = TorusGrid(cfg.M, cfg.s)
    alphas = cfg.alphas()
    lambdas = cfg.lambdas()
    qgrids = [(a, potential_grid(cfg.potential_spec(a), grid)) for a in alphas]
    cache = _sweep_cache if cfg.cache else None
    if cfg.workers == 1:
        columns = [_lambda_column(cfg, lam, qgrids, cache) for lam in lambdas]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            columns = list(pool.map(lambda lam: _lambda_column(cfg, lam, qgrids, cache), lambdas))
    samples = tuple(tuple(columns[j][i] for j in range(len(lambdas))) for i in range(len(alphas)))
    brackets = {}
    for i, a in enumerate(alphas):
        brackets[float(a)] = detect_exceptional(
            [(s.lam.real, s.t.real, s.converged) for s in samples[i]])
    symmetry = _symmetry_check(cfg, samples, alphas, lambdas, grid) if cfg.symmetry_check else None
    timing = {"seconds": time.perf_counter() - start}
    return SweepReport(cfg, tuple(float(a) for a in alphas), tuple(float(l) for l in lambdas),
                       samples, brackets, timing, symmetry)


def _symmetry_check(cfg, samples, alphas, lambdas, grid):
    """(lambda, alpha, relative difference) of t(1/lambda) against t(lambda)."""
    rng = np.random.default_rng(cfg.seed)
    i = int(rng.integers(len(alphas)))
    j = int(rng.integers(len(lambdas)))
    lam = float(lambdas[j])
    p_inv = SpectralParam(1.0 / lam, cfg.energy)
    q = potential_grid(cfg.potential_spec(alphas[i]), grid)
    f = solve_cgo(p_inv, q, grid, tol=cfg.tol, cache=False)
    t_inv = scattering_transform(f, q, p_inv)
    t = samples[i][j].t
    rel = abs(t_inv - t) / max(abs(t), 1e-300) if t != 0 else abs(t_inv)
    return (lam, float(alphas[i]), float(rel))


# Output ---------------------------------------------------------------------

def _fmt(x: float) -> str:
    return repr(float(x))


def emit_csv(report: SweepReport, path):
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            for row in report.samples:
                for s in row:
                    w.writerow([_fmt(s.alpha), _fmt(s.lam.real), _fmt(s.lam.imag), _fmt(s.t.real),
                                _fmt(s.t.imag), "true" if s.converged else "false",
                                str(s.gmres_iterations), _fmt(s.ls_residual)])
    except OSError as exc:
        raise OSError(f"cannot write CSV {path}: {exc}") from exc


def read_csv(path):
    """Parse a sweep CSV back into a list of ScatteringSample (file order)."""
    out = []
    with Path(path).open(newline="") as fh:
        rd = csv.DictReader(fh)
        if tuple(rd.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {rd.fieldnames}")
        for r in rd:
            out.append(ScatteringSample(
                complex(float(r["lambda_re"]), float(r["lambda_im"])), float(r["alpha"]),
                complex(float(r["t_re"]), float(r["t_im"])), r["converged"] == "true",
                int(r["gmres_iterations"]), float(r["ls_residual"])))
    return out


_W, _H, _PAD = 640, 420, 60


def _svg(body, width=_W, height=_H):
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">\n<rect width="100%" height="100%" fill="white"/>\n'
            + "\n".join(body) + "\n</svg>\n")


def _write(path, text):
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write SVG {path}: {exc}") from exc


def _clip_level(values):
    finite = np.asarray([v for v in values if math.isfinite(v)])
    if finite.size == 0:
        return 1.0
    lo, hi = np.percentile(finite, [2, 98])
    c = max(abs(lo), abs(hi))
    return c if c > 0 else 1.0


def emit_profile_svg(report: SweepReport, alpha: float, path):
    """t(lambda) for one alpha, clipped at the 2nd/98th percentiles; brackets shaded."""
    prof = report.profile(alpha)
    lam = np.array([p[0] for p in prof])
    t = np.array([p[1] for p in prof])
    c = _clip_level(t)
    l0, l1 = float(lam.min()), float(lam.max())
    span = l1 - l0 if l1 > l0 else 1.0

    def X(v):
        return _PAD + (v - l0) / span * (_W - 2 * _PAD)

    def Y(v):
        return _H / 2 - np.clip(v, -c, c) / c * (_H / 2 - _PAD)

    body = []
    for lo, hi in report.brackets.get(float(alpha), []):
        body.append(f'<rect x="{X(lo):.2f}" y="{_PAD}" width="{max(X(hi) - X(lo), 1):.2f}" '
                    f'height="{_H - 2 * _PAD}" fill="#f4b6b6"/>')
    body.append(f'<line x1="{_PAD}" y1="{_H / 2}" x2="{_W - _PAD}" y2="{_H / 2}" stroke="#999"/>')
    body.append(f'<rect x="{_PAD}" y="{_PAD}" width="{_W - 2 * _PAD}" height="{_H - 2 * _PAD}" '
                f'fill="none" stroke="black"/>')
    pts = " ".join(f"{X(a):.2f},{Y(b):.2f}" for a, b in zip(lam, t) if math.isfinite(b))
    body.append(f'<polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>')
    for a, b, ok in prof:
        if not ok:
            body.append(f'<circle cx="{X(a):.2f}" cy="{_H / 2}" r="3" fill="red"/>')
    body.append(f'<text x="{_W / 2}" y="{_H - 15}" text-anchor="middle">lambda</text>')
    body.append(f'<text x="15" y="{_H / 2}" transform="rotate(-90 15 {_H / 2})" '
                f'text-anchor="middle">t(lambda), clipped at {c:.3g}</text>')
    body.append(f'<text x="{_W / 2}" y="30" text-anchor="middle">alpha = {alpha:g}</text>')
    body.append(f'<text x="{_PAD}" y="{_H - _PAD + 15}" text-anchor="middle">{l0:g}</text>')
    body.append(f'<text x="{_W - _PAD}" y="{_H - _PAD + 15}" text-anchor="middle">{l1:g}</text>')
    _write(path, _svg(body))


def emit_heatmap_svg(report: SweepReport, path):
    """alpha on x, lambda on y; black = large negative t, white = large positive."""
    na, nl = len(report.alphas), len(report.lambdas)
    t = np.array([[s.t.real for s in row] for row in report.samples])
    c = _clip_level(t.ravel())
    cw = (_W - 2 * _PAD) / na
    ch = (_H - 2 * _PAD) / nl
    body = []
    for i in range(na):
        for j in range(nl):
            v = t[i, j]
            if not math.isfinite(v):
                fill = "#ff0000"
            else:
                g = int(round(255 * (np.clip(v / c, -1, 1) + 1) / 2))
                fill = f"#{g:02x}{g:02x}{g:02x}"
            y = _H - _PAD - (j + 1) * ch
            body.append(f'<rect x="{_PAD + i * cw:.2f}" y="{y:.2f}" width="{cw + 0.05:.2f}" '
                        f'height="{ch + 0.05:.2f}" fill="{fill}"/>')
    body.append(f'<rect x="{_PAD}" y="{_PAD}" width="{_W - 2 * _PAD}" height="{_H - 2 * _PAD}" '
                f'fill="none" stroke="black"/>')
    body.append(f'<text x="{_W / 2}" y="{_H - 15}" text-anchor="middle">alpha '
                f'({report.alphas[0]:g} .. {report.alphas[-1]:g})</text>')
    body.append(f'<text x="15" y="{_H / 2}" transform="rotate(-90 15 {_H / 2})" '
                f'text-anchor="middle">lambda ({report.lambdas[0]:g} .. {report.lambdas[-1]:g})</text>')
    body.append(f'<text x="{_W / 2}" y="30" text-anchor="middle">t(lambda), '
                f'grey scale clipped at +-{c:.3g}</text>')
    _write(path, _svg(body))
