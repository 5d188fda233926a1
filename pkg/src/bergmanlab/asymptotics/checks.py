"""Numerical checks of the propagator, energy-localization and Tauberian limit laws."""

from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy.stats import linregress

from bergmanlab._core.errors import CriticalPoint, DegenerateFit
from bergmanlab.bfmodel.oracle import poisson_ratio_oracle
from bergmanlab.quantization.basis import log_bergman_modulus
from bergmanlab.quantization.toeplitz import eigensection_masses, propagator_kernel
from bergmanlab.spectral.measures import cdf, smoothed_cdf
from bergmanlab.spectral.smoothing import KernelKind, make_kernel

from .erf import erf
from .ratefit import MIN_POINTS

# Smallest ||xi_H|| accepted at a regular point
CRITICAL_TOLERANCE = 1e-8


def _regular_norm(H, z):
    norm = float(H.grad_norm(z))
    if norm < CRITICAL_TOLERANCE:
        raise CriticalPoint("xi_H vanishes at z = {0}".format(z))
    return norm


def short_time_gaussian_table(spec, basis, H, z, taus):
    """Tabulate |U_k(tau / sqrt(k), z, z)| against Pi_k(z) exp(-tau^2 ||xi_H||^2 / 4).

    Args:
        spec (SpectralData): spectrum of H_k
        basis (SectionBasis): basis of the eigenvectors
        H (HamiltonianSpec): the Hamiltonian
        z (complex): a regular point of H
        taus (array of float): rescaled times

    Returns:
        DataFrame: columns k, tau, modulus, predicted, rel_error

    """
    z = complex(z)
    norm = _regular_norm(H, z)
    k = basis.k
    taus = np.asarray(taus, dtype=float)
    full = float(np.sum(eigensection_masses(spec, basis, z)))
    modulus = np.abs(
        [propagator_kernel(spec, basis, tau / np.sqrt(k), z, z) for tau in taus]
    )
    predicted = full * np.exp(-(taus**2) * norm**2 / 4.0)
    return pd.DataFrame(
        {
            "k": k,
            "tau": taus,
            "modulus": modulus,
            "predicted": predicted,
            "rel_error": np.abs(modulus - predicted) / predicted,
        }
    )


def short_time_gaussian_check(spec, basis, H, z, taus):
    """Return the largest relative error of the short-time Gaussian law over taus."""
    return float(short_time_gaussian_table(spec, basis, H, z, taus)["rel_error"].max())


def localization_predicted(full, k, norm, alpha):
    """Return Pi_k(z) (k/2pi)^(-1/2) sqrt(2) exp(-alpha^2 / ||xi||^2) / (2 pi ||xi||)."""
    return (
        full
        * (k / (2.0 * np.pi)) ** -0.5
        * np.sqrt(2.0)
        * np.exp(-np.asarray(alpha) ** 2 / norm**2)
        / (2.0 * np.pi * norm)
    )


def energy_localization_check(spec, basis, H, z, alpha, epsilon=0.5, kernel=None):
    """Pair the energy-scaled spectral measure at z with a band-limited test function.

    Args:
        spec (SpectralData): spectrum of H_k
        basis (SectionBasis): basis of the eigenvectors
        H (HamiltonianSpec): the Hamiltonian
        z (complex): a regular point of H
        alpha (float or array of float): energy offsets
        epsilon (float): band limit; the default test function is the Fejér
        kernel whose Fourier transform vanishes outside (-epsilon, epsilon)
        kernel (SmoothingKernel): test function to use instead

    Returns:
        measured (float or ndarray): sum_j f(k(mu_j - H(z)) + sqrt(k) alpha) Pi_{k,j}(z)
        predicted (float or ndarray): the limit value at the same alpha

    """
    z = complex(z)
    norm = _regular_norm(H, z)
    f = kernel or make_kernel(KernelKind.FEJER, 1.0 / epsilon)
    k = basis.k
    alpha = np.asarray(alpha, dtype=float)
    masses = eigensection_masses(spec, basis, z)
    offsets = k * (spec.eigenvalues - H.value(z))
    measured = f.density(offsets + np.sqrt(k) * alpha[..., None]) @ masses
    predicted = localization_predicted(float(np.sum(masses)), k, norm, alpha)
    if alpha.ndim == 0:
        return float(measured), float(predicted)
    return measured, predicted


def tauberian_table(measure, kernel, xs, grad_norm):
    """Tabulate the sharp, smoothed and limiting cumulative of a CLT measure.

    Args:
        measure (PointMeasure): CLT-scaled measure at a point on the level set
        kernel (SmoothingKernel): smoothing kernel
        xs (array of float): evaluation grid
        grad_norm (float): ||grad H(z)||

    Returns:
        DataFrame: columns k, x, sharp, smoothed, target

    """
    xs = np.asarray(xs, dtype=float)
    return pd.DataFrame(
        {
            "k": measure.k,
            "x": xs,
            "sharp": cdf(measure, xs),
            "smoothed": smoothed_cdf(measure, kernel, xs),
            "target": measure.total_mass * erf(np.sqrt(2.0) * xs / grad_norm),
        }
    )


def tauberian_gap(measure, kernel, xs):
    """Return sup over xs of |sharp CDF - smoothed CDF| relative to the total mass."""
    xs = np.asarray(xs, dtype=float)
    gap = np.abs(cdf(measure, xs) - smoothed_cdf(measure, kernel, xs))
    return float(np.max(gap) / measure.total_mass)


@dataclass(frozen=True)
class DecayFit:
    """Fit of log|U_k(0, z, w)| - log k against sqrt(k) d(z, w)."""

    beta_hat: float
    intercept: float
    r_squared: float
    rows: pd.DataFrame = field(repr=False)

    def to_dict(self):
        """Return the fit parameters as plain floats."""
        return {
            "beta_hat": self.beta_hat,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
        }


def offdiag_decay_fit(model, spectra, pairs):
    """Fit the off-diagonal decay of the Bergman kernel U_k(0, z, w).

    Args:
        model (GeometryModel): the geometry
        spectra (dict): {k: (basis, spec)}
        pairs (list of (complex, complex)): point pairs with distance in [0.1, 1]

    Returns:
        DecayFit: beta_hat is minus the fitted slope, positive for decay

    """
    rows = []
    for k, (basis, spec) in sorted(spectra.items()):
        for z, w in pairs:
            dist = float(model.distance(z, w))
            if not 0.1 <= dist <= 1.0:
                raise ValueError(
                    "Pair ({0}, {1}) has distance {2:.3g} outside [0.1, 1]".format(
                        z, w, dist
                    )
                )
            rows.append((k, dist, float(log_bergman_modulus(basis, z, w))))
    table = pd.DataFrame(rows, columns=["k", "dist", "log_modulus"])
    if len(table) < MIN_POINTS:
        raise DegenerateFit("Need at least {0} (k, pair) samples".format(MIN_POINTS))
    x = np.sqrt(table["k"]) * table["dist"]
    y = table["log_modulus"] - np.log(table["k"])
    if np.ptp(x) == 0 or not np.all(np.isfinite(y)):
        raise DegenerateFit("Decay samples have no spread or vanishing kernels")
    fit = linregress(x, y)
    return DecayFit(
        beta_hat=float(-fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue**2),
        rows=table,
    )


def intro_example_errors(ks, us, eps=1.0):
    """Tabulate the radial Bargmann-Fock ratio against its Erf limit.

    The points satisfy |z_k|^2 = eps (1 + u / sqrt(k)); the ratio tends to
    Erf(-u sqrt(eps)).

    Args:
        ks (list of int): tensor powers
        us (array of float): normal offsets
        eps (float): energy level

    Returns:
        DataFrame: columns k, u, ratio, target, abs_error

    """
    us = np.asarray(us, dtype=float)
    rows = []
    for k in ks:
        z = np.sqrt(eps * (1.0 + us / np.sqrt(k)))
        ratio = poisson_ratio_oracle(k, eps, z)
        target = erf(-us * np.sqrt(eps))
        rows.append(
            pd.DataFrame(
                {
                    "k": k,
                    "u": us,
                    "ratio": ratio,
                    "target": target,
                    "abs_error": np.abs(ratio - target),
                }
            )
        )
    return pd.concat(rows, ignore_index=True)
