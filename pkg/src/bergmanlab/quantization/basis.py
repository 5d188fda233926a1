"""Orthonormal monomial bases of holomorphic sections of L^k.

The section s_j = z^j e_L^k / sqrt(raw_j) is evaluated in the frame together
with the weight exp(-k phi / 2), so |s_j(z)|^2 is the pointwise h^k-norm.  All
evaluations are carried out on logarithms and exponentiated with the largest
term factored out.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.special import betaln, gammaln, logsumexp, xlogy

from bergmanlab._core.errors import DimensionMismatch, InvalidResolution, QuadratureDefect
from bergmanlab.geometry.models import ModelKind

from .quadrature import build_quadrature, default_truncation

# Largest accepted deviation of a quadrature norm from its closed form
NORM_TOLERANCE = 1e-8


@dataclass(frozen=True)
class SectionBasis:
    """Orthonormal monomial sections s_0, ..., s_{count-1} of L^k.

    Args:
        k (int): tensor power
        model (GeometryModel): the geometry
        count (int): number of sections, k + 1 on CP^1 and truncation + 1 on C
        log_norms (ndarray): log of the raw L^2 norms ||z^j||^2
        quadrature (QuadratureRule): rule the basis was validated with

    """

    k: int
    model: object
    count: int
    log_norms: np.ndarray = field(repr=False)
    quadrature: object = field(repr=False)

    @property
    def degrees(self):
        """Monomial degrees 0, ..., count - 1."""
        return np.arange(self.count)

    def log_moduli(self, z):
        """Return log |s_j(z)| for all j, on a new last axis."""
        z = np.asarray(z)
        r2 = np.abs(z)[..., None] ** 2
        return (
            0.5 * xlogy(self.degrees, r2)
            - 0.5 * self.k * self.model.potential(z)[..., None]
            - 0.5 * self.log_norms
        )

    def section_values(self, z):
        """Return s_j(z) for all j, on a new last axis."""
        z = np.asarray(z)
        phase = np.exp(1j * self.degrees * np.angle(z)[..., None])
        return np.exp(self.log_moduli(z)) * phase

    def eval(self, j, z):
        """Return s_j(z) in the frame, including the weight exp(-k phi / 2)."""
        if not 0 <= j < self.count:
            raise DimensionMismatch(
                "Section index {0} outside 0..{1}".format(j, self.count - 1)
            )
        return self.section_values(z)[..., j]

    def radial_amplitudes(self):
        """Return |s_j| at the radial quadrature nodes, shape (n_radial, count)."""
        return np.exp(self.log_moduli(self.quadrature.radial_nodes))

    def scaled_values(self, z):
        """Return (values, log_scale) with s_j(z) = values_j * exp(log_scale).

        log_scale is the largest log |s_j(z)|, so values stay in [0, 1] in
        modulus whatever the size of k.
        """
        z = np.asarray(z)
        log_mod = self.log_moduli(z)
        log_scale = np.max(log_mod, axis=-1)
        log_scale = np.where(np.isfinite(log_scale), log_scale, 0.0)
        phase = np.exp(1j * self.degrees * np.angle(z)[..., None])
        return np.exp(log_mod - log_scale[..., None]) * phase, log_scale


def _bf_log_norms(k, count):
    j = np.arange(count)
    return np.log(2.0 * np.pi) + gammaln(j + 1.0) - (j + 1.0) * np.log(k)


def _fs_log_norms(k, quadrature):
    """Raw norms of z^j on CP^1 by quadrature, checked against Beta integrals."""
    j = np.arange(k + 1)
    u = quadrature.radial_nodes**2 / (1.0 + quadrature.radial_nodes**2)
    log_terms = xlogy(j[None, :], u[:, None]) + xlogy(k - j[None, :], 1.0 - u[:, None])
    log_norms = logsumexp(log_terms, b=quadrature.radial_weights[:, None], axis=0)

    expected = np.log(2.0 * np.pi) + betaln(j + 1.0, k - j + 1.0)
    deviation = np.max(np.abs(np.expm1(log_norms - expected)))
    if deviation > NORM_TOLERANCE:
        raise QuadratureDefect(
            "Fubini-Study norms deviate from Beta integrals by {0:.3g} at k={1}".format(
                deviation, k
            )
        )
    return log_norms


def build_basis(model, k, truncation=None, quadrature=None):
    """Build the orthonormal monomial basis of degree-k sections.

    Args:
        model (GeometryModel): the geometry
        k (int): tensor power
        truncation (int): highest Bargmann-Fock degree, at least 4k; defaults to
        max(4k, k + 10 sqrt(k)).  Ignored on CP^1.
        quadrature (QuadratureRule): rule to validate and assemble with;
        built with default resolution when omitted

    Returns:
        SectionBasis: the basis

    """
    if k < 1:
        raise InvalidResolution("Tensor power k must be at least 1, got {0}".format(k))

    if model.kind is ModelKind.BARGMANN_FOCK:
        truncation = default_truncation(k) if truncation is None else int(truncation)
        if truncation < 4 * k:
            raise InvalidResolution(
                "Bargmann-Fock truncation {0} is below 4k = {1}".format(
                    truncation, 4 * k
                )
            )
        count = truncation + 1
        quadrature = quadrature or build_quadrature(model, k, truncation=truncation)
        log_norms = _bf_log_norms(k, count)
    else:
        count = k + 1
        quadrature = quadrature or build_quadrature(model, k)
        log_norms = _fs_log_norms(k, quadrature)

    basis = SectionBasis(
        k=k, model=model, count=count, log_norms=log_norms, quadrature=quadrature
    )

    # Orthonormality of the radial parts; angular orthogonality is exact
    diagonal = quadrature.radial_weights @ basis.radial_amplitudes() ** 2
    defect = np.max(np.abs(diagonal - 1.0))
    if defect > NORM_TOLERANCE:
        raise QuadratureDefect(
            "Quadrature norms of the {0} basis at k={1} deviate by {2:.3g}".format(
                model.kind.value, k, defect
            )
        )
    logging.info(
        "Built {0} sections of degree k={1} on {2}".format(count, k, model.kind.value)
    )
    return basis


def eval_density(basis, coeffs, z):
    """Return ||sum_j coeffs_j s_j(z)||^2_{h^k}.

    Args:
        basis (SectionBasis): the basis
        coeffs (array of complex): coefficients, length basis.count
        z (complex or array of complex): evaluation point(s)

    Returns:
        float or ndarray: the pointwise norm squared

    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (basis.count,):
        raise DimensionMismatch(
            "Expected {0} coefficients, got shape {1}".format(basis.count, coeffs.shape)
        )
    values, log_scale = basis.scaled_values(z)
    return np.abs(values @ coeffs) ** 2 * np.exp(2.0 * log_scale)


def log_bergman_modulus(basis, z, w):
    """Return log |Pi_k(z, w)| with Pi_k(z, w) = sum_j s_j(z) conj(s_j(w)).

    The sum is formed on logarithms, so far off-diagonal values do not
    underflow; on a common ray through the origin no cancellation occurs.
    """
    log_terms = basis.log_moduli(z) + basis.log_moduli(w)
    top = np.max(log_terms, axis=-1)
    phases = np.exp(1j * basis.degrees * (np.angle(z) - np.angle(w))[..., None])
    total = np.sum(np.exp(log_terms - top[..., None]) * phases, axis=-1)
    return top + np.log(np.abs(total))
