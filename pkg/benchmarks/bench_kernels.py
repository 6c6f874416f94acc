"""Compare the compiled and numpy contour kernels on a full Green's grid.

    python benchmarks/bench_kernels.py [--M 7] [--repeat 3]
"""
import argparse
import time

import numpy as np

from faddeev.green import _kernels
from faddeev.green.core import compute_green_grid
from faddeev.spectral import SpectralParam


def timed(M, lam, repeat):
    p = SpectralParam(lam)
    compute_green_grid(p, M, 2.1)  # warm the calibration and layer caches
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        grid = compute_green_grid(p, M, 2.1)
        best = min(best, time.perf_counter() - t0)
    return best, grid.samples


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--M", type=int, default=7)
    ap.add_argument("--lam", type=float, default=2.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    results = {}
    for name in _kernels.available():
        _kernels.use_backend(name)
        results[name] = timed(args.M, args.lam, args.repeat)
        print(f"{name:>7}: {results[name][0] * 1e3:8.1f} ms for a 2^{args.M} x 2^{args.M} grid")
    if len(results) == 2:
        diff = np.max(np.abs(results["cython"][1] - results["python"][1]))
        print(f"speedup {results['python'][0] / results['cython'][0]:.2f}x, max |diff| {diff:.2e}")
    else:
        print("compiled backend not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
