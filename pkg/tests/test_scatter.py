import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from faddeev.ls import TorusGrid, ls_solve, periodize_green
from faddeev.potentials import PotentialSpec
from faddeev.green import green_grid
from faddeev.scatter import (DbarError, born_approx, dbar_residual, potential_grid,
                             scattering_transform, solve_cgo)
from faddeev.spectral import SpectralParam

GRID6 = TorusGrid(6)
GRID7 = TorusGrid(7)  # desk scale; M=6 is too coarse for the 1e-3 symmetry bounds


def _t(lam, alpha, grid=GRID6, kind="q1"):
    p = SpectralParam(lam)
    q = potential_grid(PotentialSpec(kind, alpha), grid)
    f = solve_cgo(p, q, grid, tol=1e-10)
    assert f.converged
    return scattering_transform(f, q, p)


def test_zero_potential():
    p = SpectralParam(2.0)
    q = np.zeros((GRID6.n, GRID6.n))
    f = solve_cgo(p, q, GRID6)
    assert scattering_transform(f, q, p) == 0
    assert born_approx(q, p, GRID6) == 0


def test_born_ratio():
    # |t - born| = O(alpha^2): halving alpha divides the error by ~4
    p = SpectralParam(2.0)
    errs = []
    for a in (0.4, 0.2, 0.1):
        q = potential_grid(PotentialSpec("q1", a), GRID6)
        f = solve_cgo(p, q, GRID6, tol=1e-12)
        errs.append(abs(scattering_transform(f, q, p) - born_approx(q, p, GRID6)))
    for big, small in zip(errs, errs[1:]):
        assert 3 <= big / small <= 5


@given(st.floats(-20, 20), st.floats(-20, 20), st.sampled_from([1.3, 2.0, 3.0 + 1j]))
@settings(max_examples=25)
def test_born_linear_and_real(a, b, lam):
    p = SpectralParam(lam)
    qa = potential_grid(PotentialSpec("q1", a), GRID6)
    qb = potential_grid(PotentialSpec("q1", b), GRID6)
    ba, bb = born_approx(qa, p, GRID6), born_approx(qb, p, GRID6)
    both = born_approx(qa + qb, p, GRID6)
    assert abs(both - (ba + bb)) <= 1e-12 * (abs(ba) + abs(bb) + 1)
    assert abs(ba.imag) <= 1e-10 * abs(ba) + 1e-300


def test_t_real_and_rotation_invariant():
    t = _t(2.0, -15.0, GRID7)
    assert abs(t.imag) <= 1e-4 * max(1, abs(t))
    for theta in (math.pi / 4, math.pi / 3, math.pi / 2):
        tr = _t(2.0 * cmath.exp(1j * theta), -15.0, GRID7)
        assert abs(tr - t) <= 1e-3 * abs(t)


@pytest.mark.parametrize("r", [1.5, 2.0, 3.0])
def test_inversion_symmetry(r):
    t = _t(r, -5.0, GRID7)
    assert abs(_t(1 / r, -5.0, GRID7) - t) <= 1e-3 * abs(t)


def test_q2_real():
    t = _t(1.7, 3.0, kind="q2")
    assert abs(t.imag) <= 1e-4 * max(1, abs(t))


def test_unconverged_field_returns_value():
    p = SpectralParam(2.0)
    q = potential_grid(PotentialSpec("q1", -15.0), GRID6)
    k = periodize_green(green_grid(p, 6), GRID6)
    f = ls_solve(k, q, tol=1e-14, restart=2, maxit=2)
    assert not f.converged
    assert np.isfinite(scattering_transform(f, q, p))


def test_dbar_zero_potential():
    p = SpectralParam(2.0)
    assert dbar_residual(p, 1e-4, np.zeros((32, 32)), M=5) <= 1e-8


def test_dbar_sign_is_live():
    p = SpectralParam(1.6)
    q = PotentialSpec("q1", -5.0)
    right = dbar_residual(p, 1e-4, q, M=6)
    wrong = dbar_residual(p, 1e-4, q, M=6, sign=-1.0)
    assert wrong >= 2 * right


def test_dbar_errors():
    with pytest.raises(ValueError):
        dbar_residual(SpectralParam(2.0), 0.0, PotentialSpec("q1", 0.0), M=5)
    with pytest.raises(DbarError) as info:
        dbar_residual(SpectralParam(2.0), 1e-4, PotentialSpec("q1", -15.0), M=5, tol=1e-30)
    assert len(info.value.failing) == 9
