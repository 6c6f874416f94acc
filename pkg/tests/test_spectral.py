import cmath
import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from faddeev.spectral import (SpectralParam, ZetaVector, e_lambda, e_minus_lambda,
                              lambda_from_zeta, reduce_lambda, reduce_zeta, rotate,
                              zeta_from_lambda)

finite = st.floats(-5, 5, allow_nan=False)


@st.composite
def lambdas(draw):
    lam = complex(draw(finite), draw(finite))
    assume(abs(lam) > 0.05 and abs(abs(lam) - 1) > 0.01 and abs(lam.imag) + abs(lam.real) > 0)
    return lam


def test_param_validation():
    with pytest.raises(ValueError):
        SpectralParam(0)
    with pytest.raises(ValueError):
        SpectralParam(1.003)
    with pytest.raises(ValueError):
        SpectralParam(2.0, energy=0)
    SpectralParam(1.003, band=0.001)
    assert SpectralParam(2, 4).sqrt_energy == 2


def test_zeta_examples():
    z = zeta_from_lambda(SpectralParam(1 + 1j))
    assert abs(z.zeta1 - (0.75 + 0.25j)) < 1e-15 and abs(z.zeta2 - (0.75 - 0.25j)) < 1e-15
    z = zeta_from_lambda(SpectralParam(3.0))
    assert z.zeta1.imag == 0 and z.zeta2.real == 0


@given(lambdas(), st.floats(0.1, 10))
def test_zeta_dot_and_roundtrip(lam, energy):
    z = zeta_from_lambda(SpectralParam(lam, energy))
    assert abs(z.dot() - energy) <= 1e-12 * max(1, abs(lam) + 1 / abs(lam)) ** 2 * energy
    assert abs(lambda_from_zeta(z, energy) - lam) <= 1e-12 * max(1, abs(lam))


def test_lambda_from_zeta_examples():
    assert abs(lambda_from_zeta(zeta_from_lambda(SpectralParam(2.5 - 0.3j)), 1) - (2.5 - 0.3j)) < 1e-12
    assert abs(lambda_from_zeta(ZetaVector(0.75 + 0.25j, 0.75 - 0.25j), 1) - (1 + 1j)) < 1e-15
    with pytest.warns(RuntimeWarning):
        assert lambda_from_zeta(ZetaVector(1.0, 0.0), 1.0) == 1
    with pytest.raises(ValueError):
        lambda_from_zeta(ZetaVector(1.0, 1.0), 1.0)


def test_reduce_examples():
    red = reduce_lambda(SpectralParam(2.0))
    assert math.isclose(red.k1, -1.25) and math.isclose(red.k2, 0.75)
    assert math.isclose(red.theta, math.pi)
    red = reduce_zeta(ZetaVector(1.25, 0.75j))
    assert (red.k1, red.k2, red.theta) == (1.25, 0.75, 0.0)
    with pytest.raises(ValueError):
        reduce_zeta(ZetaVector(0.6, 0.8))


@given(lambdas(), st.floats(0.1, 10))
def test_reduce_properties(lam, energy):
    z = zeta_from_lambda(SpectralParam(lam, energy))
    red = reduce_zeta(z)
    assert abs(red.k1 ** 2 - red.k2 ** 2 - energy) <= 1e-12 * max(1, red.k1 ** 2)
    assert abs(red.k1) > red.k2 > 0
    assert -math.pi < red.theta <= math.pi
    # rotating zeta by theta gives [k1, 0] + i [0, k2]
    c, s = math.cos(red.theta), math.sin(red.theta)
    r1 = c * z.zeta1 - s * z.zeta2
    r2 = s * z.zeta1 + c * z.zeta2
    scale = max(1.0, abs(red.k1))
    assert abs(r1 - red.k1) <= 1e-12 * scale and abs(r2 - 1j * red.k2) <= 1e-12 * scale


@pytest.mark.parametrize("r", [1.5, 2.0, 3.0, 0.5, 0.25])
def test_real_lambda_reduction(r):
    red = reduce_lambda(SpectralParam(r))
    assert red.theta in (0.0, math.pi)
    assert math.isclose(abs(red.k1), (r + 1 / r) / 2) and math.isclose(red.k2, abs(r - 1 / r) / 2)


@given(lambdas())
def test_conjugation_relation(lam):
    a = zeta_from_lambda(SpectralParam(lam))
    b = zeta_from_lambda(SpectralParam(1 / np.conj(lam)))
    scale = abs(lam) + 1 / abs(lam)
    assert abs(b.zeta1 - np.conj(a.zeta1)) <= 1e-12 * scale
    assert abs(b.zeta2 - np.conj(a.zeta2)) <= 1e-12 * scale


@given(lambdas(), finite, finite)
def test_e_lambda(lam, x, y):
    p = SpectralParam(lam)
    z = complex(x, y)
    e = e_lambda(z, p)
    assert abs(abs(e) - 1) < 1e-12
    assert abs(e_minus_lambda(z, p) - np.conj(e)) < 1e-12
    assert abs(e_minus_lambda(z, p) * e - 1) < 1e-12
    direct = cmath.exp(0.5j * (lam * z.conjugate() + lam.conjugate() * z + z / lam
                               + z.conjugate() / lam.conjugate()))
    assert abs(e - direct) < 1e-9
    assert e_lambda(0, p) == 1


def test_rotate():
    assert abs(rotate(1.0, math.pi / 2) - 1j) < 1e-15
    assert np.allclose(rotate(np.array([1, 1j]), math.pi), [-1, -1j])
