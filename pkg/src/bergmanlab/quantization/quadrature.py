"""Tensor quadrature rules on the model geometries.

A rule is Gauss-Legendre in a mapped radial variable times the uniform
trapezoid rule in the angle, with the model volume density folded into the
weights:

    Fubini-Study    u = r^2 / (1 + r^2) in [0, 1],   dVol = du dtheta
    Bargmann-Fock   t = r^2 in [0, T],                dVol = dt dtheta

In u the Fubini-Study integrands of degree-k sections are polynomials, so the
rule is exact once n_radial is large enough.  The Bargmann-Fock interval is cut
at T, many standard deviations past the last section of the truncated basis.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_legendre

from bergmanlab._core.errors import InvalidResolution
from bergmanlab.geometry.models import ModelKind

# Smallest number of radial nodes accepted
MIN_RADIAL = 32


def default_truncation(k):
    """Return the default Bargmann-Fock basis truncation max(4k, k + 10 sqrt(k))."""
    return int(max(4 * k, np.ceil(k + 10.0 * np.sqrt(k))))


def default_resolution(model, k, truncation=None):
    """Return the default (n_radial, n_angular) for tensor power k.

    Args:
        model (GeometryModel): the geometry
        k (int): tensor power
        truncation (int): Bargmann-Fock truncation, ignored for Fubini-Study

    Returns:
        n_radial (int): Gauss-Legendre nodes
        n_angular (int): trapezoid nodes

    """
    n_angular = 2 * k + 8
    if model.kind is ModelKind.FUBINI_STUDY_CP1:
        return max(MIN_RADIAL, k + 16), n_angular
    count = (truncation or default_truncation(k)) + 1
    return max(MIN_RADIAL, count + 64), n_angular


def bf_radial_cutoff(k, truncation):
    """Return the upper end T of the Bargmann-Fock radial interval in t = r^2."""
    return (truncation + 12.0 * np.sqrt(truncation) + 40.0) / k


@dataclass(frozen=True)
class QuadratureRule:
    """A tensor rule: radial nodes times equispaced angles.

    Args:
        radial_nodes (ndarray): moduli r_i > 0
        radial_weights (ndarray): weights W_i with
            integral of F(|z|) dVol = sum_i W_i F(r_i) for radial F
        n_angular (int): number of equispaced angles
        exactness_note (str): what the rule integrates exactly

    """

    radial_nodes: np.ndarray = field(repr=False)
    radial_weights: np.ndarray = field(repr=False)
    n_angular: int
    exactness_note: str

    @property
    def n_radial(self):
        """Number of radial nodes."""
        return len(self.radial_nodes)

    @property
    def angles(self):
        """Equispaced angles in [0, 2 pi)."""
        return 2.0 * np.pi * np.arange(self.n_angular) / self.n_angular

    @property
    def nodes(self):
        """Complex chart points, radial index first, flattened."""
        return (self.radial_nodes[:, None] * np.exp(1j * self.angles)[None, :]).ravel()

    @property
    def weights(self):
        """Positive weights matching nodes."""
        return np.repeat(self.radial_weights / self.n_angular, self.n_angular)

    def integrate(self, f):
        """Return the quadrature sum of f(z) dVol.

        Args:
            f (callable): vectorized function of complex z

        """
        return np.sum(self.weights * f(self.nodes))


def build_quadrature(model, k, n_radial=None, n_angular=None, truncation=None):
    """Build the tensor quadrature rule used for degree-k sections.

    Args:
        model (GeometryModel): the geometry
        k (int): tensor power, k >= 1
        n_radial (int): Gauss-Legendre nodes, >= 32; None or 0 for the default
        n_angular (int): trapezoid nodes, >= 2k + 2; None or 0 for the default
        truncation (int): Bargmann-Fock basis truncation setting the radial
        cutoff; None for the default

    Returns:
        QuadratureRule: the rule

    """
    if k < 1:
        raise InvalidResolution("Tensor power k must be at least 1, got {0}".format(k))
    if model.kind is ModelKind.BARGMANN_FOCK and truncation is None:
        truncation = default_truncation(k)
    default_radial, default_angular = default_resolution(model, k, truncation)
    n_radial = n_radial or default_radial
    n_angular = n_angular or default_angular
    if n_radial < MIN_RADIAL:
        raise InvalidResolution(
            "n_radial = {0} is below the minimum of {1}".format(n_radial, MIN_RADIAL)
        )
    if n_angular < 2 * k + 2:
        raise InvalidResolution(
            "n_angular = {0} is below 2k + 2 = {1}".format(n_angular, 2 * k + 2)
        )

    x, w = roots_legendre(n_radial)
    if model.kind is ModelKind.FUBINI_STUDY_CP1:
        u = 0.5 * (x + 1.0)
        radial_nodes = np.sqrt(u / (1.0 - u))
        radial_weights = np.pi * w
        note = "exact for polynomials of degree {0} in r^2/(1+r^2)".format(
            2 * n_radial - 1
        )
    else:
        cutoff = bf_radial_cutoff(k, truncation)
        t = 0.5 * cutoff * (x + 1.0)
        radial_nodes = np.sqrt(t)
        radial_weights = np.pi * cutoff * w
        note = "Gauss-Legendre in r^2 on [0, {0:.6g}]".format(cutoff)
    note += "; trapezoid exact for angular frequencies below {0}".format(n_angular)

    logging.info(
        "Quadrature for {0}, k={1}: {2} radial x {3} angular nodes".format(
            model.kind.value, k, n_radial, n_angular
        )
    )
    return QuadratureRule(
        radial_nodes=radial_nodes,
        radial_weights=radial_weights,
        n_angular=int(n_angular),
        exactness_note=note,
    )
