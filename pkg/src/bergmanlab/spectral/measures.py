"""Partial densities and the rescaled spectral measures at a point.

At a point z the eigensections of H_k carry the masses
Pi_{k,j}(z) = ||s^_j(z)||^2, and the spectral measures put these masses at

    Unscaled   mu_j
    CLT        sqrt(k) (mu_j - H(z))
    Energy     k (mu_j - H(z)) + sqrt(k) tau

An eigenvalue within the tie tolerance of a threshold counts as lying below
it, the same closed convention the cumulative functions use.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.special import roots_hermite

from bergmanlab._core.errors import EmptySpectrum, MissingTau
from bergmanlab.quantization.toeplitz import (
    TIE_TOLERANCE,
    boundary_modes,
    eigensection_masses,
)

# Gauss-Hermite nodes used for leading-term integrals
HERMITE_NODES = 96


class Scaling(str, Enum):
    """Where the atoms of a spectral measure are placed."""

    UNSCALED = "Unscaled"
    CLT = "CLT"
    ENERGY = "Energy"


@dataclass(frozen=True)
class PointMeasure:
    """A finite weighted sum of Dirac masses on the real line.

    Args:
        locations (ndarray): atom locations
        masses (ndarray): nonnegative atom masses
        scaling (Scaling): how locations relate to the eigenvalues
        z (complex): anchor point
        k (int): tensor power
        tau (float): energy-scaling shift, None otherwise

    """

    locations: np.ndarray = field(repr=False)
    masses: np.ndarray = field(repr=False)
    scaling: Scaling
    z: complex
    k: int
    tau: float = None

    @property
    def atoms(self):
        """List of (location, mass)."""
        return list(zip(self.locations.tolist(), self.masses.tolist()))

    @property
    def total_mass(self):
        """Sum of all masses."""
        return float(np.sum(self.masses))


class DensityRatio(NamedTuple):
    """Partial over full Bergman density at a point."""

    ratio: float
    partial: float
    full: float


def _below(eigenvalues, E):
    return (eigenvalues < E) | (np.abs(eigenvalues - E) < TIE_TOLERANCE)


def partial_density_ratio(spec, basis, E, z):
    """Return the partial density Pi_{k,E}(z), the full density and their ratio.

    Args:
        spec (SpectralData): spectrum of H_k
        basis (SectionBasis): basis of the eigenvectors
        E (float): energy threshold
        z (complex or array of complex): point(s)

    Returns:
        DensityRatio: (ratio, partial, full), arrays when z is an array

    """
    if spec.count == 0:
        raise EmptySpectrum("Cannot form partial densities from an empty spectrum")
    ties = boundary_modes(spec, E)
    if len(ties) > 0:
        logging.info(
            "{0} eigenvalue(s) within {1:g} of E = {2:g} counted as below".format(
                len(ties), TIE_TOLERANCE, E
            )
        )
    masses = eigensection_masses(spec, basis, z)
    full = np.sum(masses, axis=-1)
    partial = np.sum(masses[..., _below(spec.eigenvalues, E)], axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(full > 0, partial / full, 0.0)
    if np.ndim(ratio) == 0:
        return DensityRatio(float(ratio), float(partial), float(full))
    return DensityRatio(ratio=ratio, partial=partial, full=full)


def weighted_partial_density(spec, basis, f, z):
    """Return sum_j f(mu_j) Pi_{k,j}(z) for a weight function f of the energy."""
    masses = eigensection_masses(spec, basis, z)
    return masses @ np.asarray(f(spec.eigenvalues), dtype=float)


def interval_density_ratio(spec, basis, E1, E2, z):
    """Return the density of modes with E1 < mu <= E2 relative to Pi_k(z)."""
    upper = partial_density_ratio(spec, basis, E2, z)
    lower = partial_density_ratio(spec, basis, E1, z)
    return upper.ratio - lower.ratio


def spectral_measure(spec, basis, z, scaling, H=None, tau=None):
    """Return the spectral measure of H_k at z in the requested scaling.

    Args:
        spec (SpectralData): spectrum of H_k
        basis (SectionBasis): basis of the eigenvectors
        z (complex): anchor point
        scaling (Scaling or str): "Unscaled", "CLT" or "Energy"
        H (HamiltonianSpec): the classical Hamiltonian; needed for CLT and
        Energy scalings
        tau (float): shift of the Energy scaling

    Returns:
        PointMeasure: the measure

    """
    scaling = Scaling(scaling)
    if spec.count == 0:
        raise EmptySpectrum("Cannot form a spectral measure from an empty spectrum")
    masses = eigensection_masses(spec, basis, complex(z))
    mu = spec.eigenvalues
    k = basis.k

    if scaling is Scaling.UNSCALED:
        locations = mu.copy()
        tau = None
    else:
        if H is None:
            raise ValueError("{0} scaling needs the Hamiltonian".format(scaling.value))
        energy = float(H.value(complex(z)))
        if scaling is Scaling.CLT:
            locations = np.sqrt(k) * (mu - energy)
            tau = None
        else:
            if tau is None:
                raise MissingTau("Energy scaling needs a value for tau")
            locations = k * (mu - energy) + np.sqrt(k) * tau
    return PointMeasure(
        locations=locations,
        masses=masses,
        scaling=scaling,
        z=complex(z),
        k=k,
        tau=tau,
    )


def cdf(m, x):
    """Return the mass of the atoms at locations <= x.

    Args:
        m (PointMeasure): the measure
        x (float or array of float): evaluation point(s)

    Returns:
        float or ndarray: the cumulative function, closed at x

    """
    order = np.argsort(m.locations, kind="stable")
    cumulative = np.concatenate([[0.0], np.cumsum(m.masses[order])])
    index = np.searchsorted(m.locations[order], x, side="right")
    return cumulative[index]


def smoothed_cdf(m, W, x):
    """Return the cumulative of m convolved with the kernel W at x.

    Args:
        m (PointMeasure): the measure
        W (SmoothingKernel): smoothing kernel
        x (float or array of float): evaluation point(s)

    Returns:
        float or ndarray: sum over atoms of mass * CDF_W(x - location)

    """
    x = np.asarray(x, dtype=float)
    return W.cumulative(x[..., None] - m.locations) @ m.masses


def pair_with_test_function(m, f):
    """Return the integral of f against the measure."""
    return float(np.asarray(f(m.locations), dtype=float) @ m.masses)


def leading_term_I0(f, grad_norm, beta=0.0):
    """Return the leading coefficient of the sqrt(k)-rescaled pairing.

        I_0 = integral f(x) exp(-(x / g - beta g)^2) dx / (sqrt(pi) g),

    with g = ||grad H(z)||, by Gauss-Hermite quadrature.  Accurate for smooth f.

    Args:
        f (callable): vectorized test function
        grad_norm (float): ||grad H(z)||, positive
        beta (float): gradient-flow displacement of the point

    Returns:
        float: I_0

    """
    y, w = roots_hermite(HERMITE_NODES)
    x = grad_norm * (y + beta * grad_norm)
    return float(np.asarray(f(x), dtype=float) @ w / np.sqrt(np.pi))
