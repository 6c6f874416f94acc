import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from faddeev.numerics import (QuadratureRule, bessel_j0, bessel_y0, expint_e1, fft2,
                              gauss_legendre, gmres_solve, hankel1_0, ifft2)

ABSCISSAE = np.logspace(-3, 2, 50)


def test_j0_examples():
    assert bessel_j0(0.0) == 1.0
    assert abs(bessel_j0(2.404825557695773)) < 1e-10
    assert abs(bessel_j0(1.0) - 0.765197686557967) < 1e-12


def test_y0_examples():
    assert abs(bessel_y0(1.0) - 0.088256964215677) < 1e-10
    assert bessel_y0(1e-8) < -10
    assert abs(bessel_y0(0.893576966279167)) < 1e-8


def test_hankel_examples():
    h = hankel1_0(1.0)
    assert abs(h - (0.765197686557967 + 0.088256964215677j)) < 1e-12
    x = np.linspace(0.1, 60, 301)
    assert np.array_equal(hankel1_0(x).real, bessel_j0(x))
    big = np.linspace(10, 100, 50)
    env = np.sqrt(2 / (np.pi * big))
    assert np.all(np.abs(np.abs(hankel1_0(big)) / env - 1) < 0.05)


@pytest.mark.parametrize("x", ABSCISSAE)
def test_bessel_against_oracle(x):
    assert abs(bessel_j0(x) - oracles.j0(x)) <= 1e-12
    assert abs(bessel_y0(x) - oracles.y0(x)) <= 1e-10


@pytest.mark.parametrize("x", np.logspace(-3, 2, 50))
def test_e1_against_oracle(x):
    ref = oracles.e1(x)
    assert abs(expint_e1(x) - ref) <= 1e-10 * ref


def test_e1_examples():
    assert expint_e1(14.0) < 6e-8
    assert abs(expint_e1(1.0) - 0.219383934395520) < 1e-12
    assert expint_e1(2.0) < expint_e1(1.0)


@pytest.mark.parametrize("f", [bessel_y0, hankel1_0, expint_e1])
@pytest.mark.parametrize("x", [0.0, -1.0, np.nan])
def test_domain_errors(f, x):
    with pytest.raises(ValueError):
        f(x)


def test_gauss_legendre_examples():
    r = gauss_legendre(1, 0.0, 2.0)
    assert isinstance(r, QuadratureRule)
    assert r.nodes.tolist() == [1.0] and r.weights.tolist() == [2.0]
    assert abs(gauss_legendre(2, 0.0, 1.0).integrate(lambda x: x ** 3) - 0.25) < 1e-14
    for n in (1, 5, 64, 300):
        r = gauss_legendre(n, -1.5, 4.0)
        assert abs(r.weights.sum() - 5.5) < 1e-13
        assert np.all((r.nodes > -1.5) & (r.nodes < 4.0))
    with pytest.raises(ValueError):
        gauss_legendre(0, 0, 1)
    with pytest.raises(ValueError):
        gauss_legendre(3, 1, 1)


@given(n=st.integers(1, 30), a=st.floats(-5, 5), width=st.floats(0.1, 5),
       seed=st.integers(0, 2 ** 32 - 1))
def test_gauss_legendre_exactness(n, a, width, seed):
    b = a + width
    coef = np.random.default_rng(seed).normal(size=2 * n)
    poly = np.polynomial.Polynomial(coef)
    anti = poly.integ()
    exact = anti(b) - anti(a)
    got = gauss_legendre(n, a, b).integrate(poly)
    scale = max(1.0, np.abs(coef).sum() * max(abs(a), abs(b)) ** (2 * n) * width)
    assert abs(got - exact) <= 1e-12 * scale


def test_gmres_examples():
    rhs = np.array([1 + 2j, -3.0, 0.5j])
    x, rep = gmres_solve(lambda v: v, rhs)
    assert np.allclose(x, rhs) and rep.iterations <= 1 and rep.converged
    x, rep = gmres_solve(lambda v: np.array([2, 4]) * v, np.array([2.0, 8.0]))
    assert np.allclose(x, [1, 2], atol=1e-7) and rep.converged
    x, rep = gmres_solve(lambda v: 0 * v, np.array([1.0, 1.0]))
    assert not rep.converged


def test_gmres_nan_operator():
    with pytest.raises(FloatingPointError):
        gmres_solve(lambda v: v * np.nan, np.ones(3))


def test_gmres_zero_rhs():
    x, rep = gmres_solve(lambda v: 2 * v, np.zeros(4))
    assert np.all(x == 0) and rep.iterations == 0 and rep.converged


@given(seed=st.integers(0, 2 ** 32 - 1))
def test_gmres_matches_dense(seed):
    rng = np.random.default_rng(seed)
    A = np.eye(8) * 4 + rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    A = A / np.linalg.norm(A, 2)
    if np.linalg.cond(A) > 50:
        A = A + 2 * np.eye(8)
    b = rng.normal(size=8) + 1j * rng.normal(size=8)
    tol = 1e-10
    x, rep = gmres_solve(lambda v: A @ v, b, tol=tol)
    ref = np.linalg.solve(A, b)
    assert rep.converged and rep.final_residual <= tol
    assert np.linalg.norm(x - ref) / np.linalg.norm(ref) <= 10 * tol * np.linalg.cond(A)


def test_gmres_restart_exhaustion_reported():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(40, 40))
    b = rng.normal(size=40)
    x, rep = gmres_solve(lambda v: A @ v, b, tol=1e-14, restart=2, maxit=4)
    assert not rep.converged and rep.iterations <= 4


def test_fft_examples():
    rng = np.random.default_rng(0)
    f = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    assert np.max(np.abs(ifft2(fft2(f)) - f)) <= 1e-12 * np.max(np.abs(f))
    d = np.zeros((8, 8))
    d[0, 0] = 1
    assert np.allclose(fft2(d), 1.0)
    assert np.isclose(np.linalg.norm(fft2(f)) ** 2, f.size * np.linalg.norm(f) ** 2)
    for bad in (np.zeros((6, 6)), np.zeros((8, 4)), np.zeros(8)):
        with pytest.raises(ValueError):
            fft2(bad)


def test_fft_convolution_theorem():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    b = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    direct = np.zeros((8, 8), dtype=complex)
    for i in range(8):
        for j in range(8):
            for k in range(8):
                for l in range(8):
                    direct[i, j] += a[k, l] * b[(i - k) % 8, (j - l) % 8]
    assert np.max(np.abs(ifft2(fft2(a) * fft2(b)) - direct)) <= 1e-10
