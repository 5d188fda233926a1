"""Smoothing kernels of unit mass and their cumulative functions.

Fejér:     W(x) = (1 / 2 pi) (sin(x/2) / (x/2))^2,   W^(xi) = max(0, 1 - |xi|)
Gaussian:  W(x) = exp(-x^2 / 2) / sqrt(2 pi)

The Fejér cumulative has the closed form

    1/2 + (Si(x) - (x/2) (sin(x/2) / (x/2))^2) / pi,

with Si the sine integral.  Kernels of width h are W_h(x) = W(x / h) / h.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import ndtr, sici

from bergmanlab._core.errors import InvalidWidth


class KernelKind(str, Enum):
    """Shape of a smoothing kernel."""

    FEJER = "Fejer"
    GAUSSIAN = "Gaussian"


def fejer_density(x):
    """Return the unit-width Fejér kernel."""
    return np.sinc(np.asarray(x) / (2.0 * np.pi)) ** 2 / (2.0 * np.pi)


def fejer_cumulative(x):
    """Return the integral of the unit-width Fejér kernel from -inf to x."""
    x = np.asarray(x, dtype=float)
    si, _ = sici(x)
    return 0.5 + (si - 0.5 * x * np.sinc(x / (2.0 * np.pi)) ** 2) / np.pi


def fejer_fourier(xi):
    """Return the Fourier transform of the unit-width Fejér kernel."""
    return np.maximum(0.0, 1.0 - np.abs(np.asarray(xi, dtype=float)))


def gaussian_density(x):
    """Return the standard normal density."""
    return np.exp(-0.5 * np.asarray(x) ** 2) / np.sqrt(2.0 * np.pi)


def gaussian_fourier(xi):
    """Return the Fourier transform of the standard normal density."""
    return np.exp(-0.5 * np.asarray(xi, dtype=float) ** 2)


_SHAPES = {
    KernelKind.FEJER: (fejer_density, fejer_cumulative, fejer_fourier),
    KernelKind.GAUSSIAN: (gaussian_density, ndtr, gaussian_fourier),
}


@dataclass(frozen=True)
class SmoothingKernel:
    """A nonnegative kernel W_h of unit integral.

    The Gaussian kernel has no compactly supported Fourier transform; it is
    offered for comparison with the Fejér kernel only.
    """

    kind: KernelKind
    h: float

    def density(self, x):
        """Return W_h(x)."""
        return _SHAPES[self.kind][0](np.asarray(x) / self.h) / self.h

    def cumulative(self, x):
        """Return the integral of W_h from -inf to x."""
        return _SHAPES[self.kind][1](np.asarray(x) / self.h)

    def fourier(self, xi):
        """Return the Fourier transform of W_h at xi."""
        return _SHAPES[self.kind][2](self.h * np.asarray(xi))

    @property
    def band_limit(self):
        """Half-width of the Fourier support, inf for the Gaussian."""
        return 1.0 / self.h if self.kind is KernelKind.FEJER else np.inf


def make_kernel(kind, h):
    """Create a smoothing kernel of width h.

    Args:
        kind (str or KernelKind): "Fejer" or "Gaussian"
        h (float): width, h > 0

    Returns:
        SmoothingKernel: the kernel

    """
    kind = KernelKind(kind)
    if not (np.isfinite(h) and h > 0):
        raise InvalidWidth("Kernel width must be a positive number, got {0}".format(h))
    return SmoothingKernel(kind=kind, h=float(h))
