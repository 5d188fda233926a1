import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import quad

from bergmanlab._core.errors import InvalidWidth
from bergmanlab.spectral import (
    KernelKind,
    fejer_cumulative,
    fejer_density,
    make_kernel,
)


def test_fejer_cumulative_limits():
    assert_allclose(fejer_cumulative(0.0), 0.5, atol=1e-15)
    x = np.array([0.3, 2.0, 17.0, 300.0])
    assert_allclose(fejer_cumulative(x) + fejer_cumulative(-x), 1.0, atol=1e-14)
    # slow x^-2 tails: 1 - F(x) ~ 1 / (pi x)
    assert_allclose(1 - fejer_cumulative(1e6), 1 / (np.pi * 1e6), rtol=1e-3)


def test_fejer_cumulative_derivative():
    x = np.linspace(-30, 30, 121)
    h = 1e-5
    derivative = (fejer_cumulative(x + h) - fejer_cumulative(x - h)) / (2 * h)
    assert_allclose(derivative, fejer_density(x), atol=1e-8)


def test_fejer_cumulative_against_quadrature():
    for a, b in [(-3.0, 2.0), (0.0, 40.0), (-100.0, 5.0)]:
        mass, _ = quad(fejer_density, a, b, limit=500, epsabs=1e-13, epsrel=1e-12)
        assert_allclose(fejer_cumulative(b) - fejer_cumulative(a), mass, atol=1e-9)


@pytest.mark.parametrize(
    "xi, expected", [(0.25, 0.75), (0.5, 0.5), (1.5, 0.0), (2.0, 0.0)]
)
def test_fejer_fourier_support(xi, expected):
    # the kernel is even, so its transform is twice the cosine transform on [0, inf)
    half, _ = quad(fejer_density, 0.0, np.inf, weight="cos", wvar=xi)
    assert_allclose(2 * half, expected, atol=1e-6)
    W = make_kernel(KernelKind.FEJER, 1.0)
    assert_allclose(W.fourier(xi), expected)


def test_gaussian_unit_mass():
    W = make_kernel("Gaussian", 0.3)
    mass, _ = quad(W.density, -np.inf, np.inf)
    assert_allclose(mass, 1.0, atol=1e-12)
    assert W.band_limit == np.inf


def test_scaled_kernel():
    W = make_kernel("Fejer", 0.5)
    assert W.band_limit == 2.0
    assert_allclose(W.density(0.2), 2 * fejer_density(0.4))
    assert_allclose(W.cumulative(0.2), fejer_cumulative(0.4))
    assert W.fourier(2.0) == 0.0


@pytest.mark.parametrize("h", [0.0, -1.0, np.inf, np.nan])
def test_invalid_width(h):
    with pytest.raises(InvalidWidth):
        make_kernel("Fejer", h)
