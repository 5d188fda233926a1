"""Toeplitz quantization of a Hamiltonian and its spectral decomposition.

On a monomial z^l the Kostant operator A = H + (i/k) nabla_{xi_H} acts by
multiplication with G0 + l G1, where, writing a for the (1,0) coefficient of
xi_H,

    G0 = H - i a dphi/dz,      G1 = (i/k) a / z.

The multiplication compression uses G0 = H and G1 = 0.  Matrix entries are

    M_jl = sum_i W_i |s_j(r_i)| |s_l(r_i)| (G0^(j-l)(r_i) + l G1^(j-l)(r_i)),

with G^(n)(r) the n-th angular Fourier coefficient at radius r, computed by
FFT over the trapezoid angles.  Only Fourier orders that actually occur are
assembled, one matrix diagonal each.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg

from bergmanlab._core.errors import (
    DimensionMismatch,
    EigensolverFailure,
    InvalidResolution,
    QuadratureDefect,
)

from .basis import build_basis

# Largest accepted Hermitian defect before symmetrization
HERMITIAN_TOLERANCE = 1e-6
# Relative size below which an angular Fourier order is treated as absent
FOURIER_CUTOFF = 1e-15
# Eigenvalues closer than this to a threshold are reported as boundary modes
TIE_TOLERANCE = 1e-12


class ToeplitzMode(str, Enum):
    """Which quantization of H is assembled."""

    KOSTANT = "Kostant"
    MULTIPLICATION = "Multiplication"


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Matrix of a quantized Hamiltonian in the orthonormal monomial basis."""

    entries: np.ndarray = field(repr=False)
    mode: ToeplitzMode
    k: int
    hamiltonian_label: str
    hermitian_defect: float = 0.0


@dataclass(frozen=True)
class SpectralData:
    """Ascending eigenvalues and unitary eigen-coefficient matrix (columns)."""

    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    k: int

    @property
    def count(self):
        """Number of eigenvalues."""
        return len(self.eigenvalues)


def _multipliers(model, H, z, mode, k):
    """Return (G0, G1) at the points z."""
    value = H.value(z)
    if mode is ToeplitzMode.MULTIPLICATION:
        return value.astype(complex), np.zeros_like(z, dtype=complex)
    a = H.xi_complex(z)
    g0 = value - 1j * a * model.potential_dz(z)
    g1 = (1j / k) * a / z
    return g0, g1


def build_toeplitz(model, H, basis, mode=ToeplitzMode.KOSTANT):
    """Assemble the Toeplitz matrix of H on the section basis.

    Args:
        model (GeometryModel): the geometry the basis was built on
        H (HamiltonianSpec): the Hamiltonian
        basis (SectionBasis): orthonormal sections
        mode (ToeplitzMode or str): "Kostant" or "Multiplication"

    Returns:
        ToeplitzMatrix: the symmetrized matrix with its Hermitian defect

    """
    mode = ToeplitzMode(mode)
    if basis.model.kind is not model.kind or H.model.kind is not model.kind:
        raise DimensionMismatch("Basis, Hamiltonian and model must share one geometry")
    rule = basis.quadrature
    if rule.n_angular < 2 * basis.k + 2:
        raise InvalidResolution(
            "n_angular = {0} is below 2k + 2 = {1}".format(
                rule.n_angular, 2 * basis.k + 2
            )
        )

    count = basis.count
    points = rule.radial_nodes[:, None] * np.exp(1j * rule.angles)[None, :]
    g0, g1 = _multipliers(model, H, points, mode, basis.k)
    # Fourier coefficients G^(n) at every radius, n in fft order
    g0_hat = np.fft.fft(g0, axis=1) / rule.n_angular
    g1_hat = np.fft.fft(g1, axis=1) / rule.n_angular
    amplitudes = basis.radial_amplitudes()
    weights = rule.radial_weights

    scale = max(np.max(np.abs(g0_hat)), np.max(np.abs(g1_hat)) * count, 1e-300)
    highest = min(count - 1, (rule.n_angular - 1) // 2)
    entries = np.zeros((count, count), dtype=complex)
    n_orders = 0
    for n in range(-highest, highest + 1):
        c0 = g0_hat[:, n % rule.n_angular]
        c1 = g1_hat[:, n % rule.n_angular]
        if max(np.max(np.abs(c0)), np.max(np.abs(c1)) * count) <= FOURIER_CUTOFF * scale:
            continue
        n_orders += 1
        size = count - abs(n)
        # rows j and columns l with j - l = n
        rows = np.arange(max(n, 0), max(n, 0) + size)
        cols = rows - n
        products = amplitudes[:, rows] * amplitudes[:, cols]
        entries[rows, cols] = (weights * c0) @ products + cols * (
            (weights * c1) @ products
        )

    defect = float(np.max(np.abs(entries - entries.conj().T)))
    if defect > HERMITIAN_TOLERANCE:
        raise QuadratureDefect(
            "Toeplitz matrix of `{0}` at k={1} has Hermitian defect {2:.3g}".format(
                H.label, basis.k, defect
            )
        )
    logging.info(
        "Assembled {0} Toeplitz matrix of `{1}` at k={2}: {3} Fourier orders, "
        "Hermitian defect {4:.3g}".format(mode.value, H.label, basis.k, n_orders, defect)
    )
    return ToeplitzMatrix(
        entries=0.5 * (entries + entries.conj().T),
        mode=mode,
        k=basis.k,
        hamiltonian_label=H.label,
        hermitian_defect=defect,
    )


def diagonalize(M, k=None, residual_tolerance=1e-8):
    """Return the full Hermitian eigendecomposition of a Toeplitz matrix.

    Args:
        M (ToeplitzMatrix or ndarray): Hermitian matrix
        k (int): tensor power; required for a plain array, taken from M otherwise
        residual_tolerance (float): bound on max_j ||M v_j - mu_j v_j|| / ||M||

    Returns:
        SpectralData: ascending eigenvalues and eigenvectors

    """
    if isinstance(M, ToeplitzMatrix):
        if k is not None and k != M.k:
            raise ValueError(
                "k={0} does not match the matrix, assembled at k={1}".format(k, M.k)
            )
        entries, k = M.entries, M.k
    elif k is None:
        raise ValueError("Diagonalizing a plain array needs the tensor power k")
    else:
        entries = np.asarray(M)
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(entries)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise EigensolverFailure(str(err)) from err

    norm = max(np.max(np.abs(eigenvalues), initial=0.0), 1e-300)
    residual = np.max(
        np.linalg.norm(entries @ eigenvectors - eigenvectors * eigenvalues, axis=0)
    )
    if residual > residual_tolerance * norm:
        raise EigensolverFailure(
            "Eigen-residual {0:.3g} exceeds {1:.3g} * ||M||".format(
                residual, residual_tolerance
            )
        )
    return SpectralData(eigenvalues=eigenvalues, eigenvectors=eigenvectors, k=k)


def boundary_modes(spec, E, tol=TIE_TOLERANCE):
    """Return the indices j with |mu_j - E| < tol."""
    return np.flatnonzero(np.abs(spec.eigenvalues - E) < tol)


def _check_consistent(spec, basis):
    if spec.count != basis.count:
        raise DimensionMismatch(
            "Spectral data has {0} modes but the basis has {1} sections".format(
                spec.count, basis.count
            )
        )


def eigensection_values(spec, basis, z):
    """Return (values, log_scale) with the eigensections at z equal to values * exp(log_scale)."""
    _check_consistent(spec, basis)
    values, log_scale = basis.scaled_values(z)
    return values @ spec.eigenvectors, log_scale


def eigensection_masses(spec, basis, z):
    """Return Pi_{k,j}(z) = ||s^_j(z)||^2 for every eigenvalue, on a new last axis."""
    values, log_scale = eigensection_values(spec, basis, z)
    return np.abs(values) ** 2 * np.exp(2.0 * log_scale)[..., None]


def propagator_kernel(spec, basis, t, z, w):
    """Return U_k(t, z, w) = sum_j exp(i t k mu_j) s^_j(z) conj(s^_j(w)).

    Args:
        spec (SpectralData): diagonalized Toeplitz operator
        basis (SectionBasis): basis the eigenvectors are written in
        t (float): time
        z (complex): first point
        w (complex): second point

    Returns:
        complex: the kernel of exp(i t k H_k) in the frame

    """
    at_z, scale_z = eigensection_values(spec, basis, z)
    at_w, scale_w = eigensection_values(spec, basis, w)
    phases = np.exp(1j * t * basis.k * spec.eigenvalues)
    return np.sum(phases * at_z * np.conj(at_w), axis=-1) * np.exp(scale_z + scale_w)


def propagator_matrix(spec, t):
    """Return the unitary exp(i t k H_k) in the section basis."""
    phases = np.exp(1j * t * spec.k * spec.eigenvalues)
    return (spec.eigenvectors * phases) @ spec.eigenvectors.conj().T


def quantize(model, H, k, mode=ToeplitzMode.KOSTANT, truncation=None, quadrature=None):
    """Build the basis, assemble H_k and diagonalize it.

    Args:
        model (GeometryModel): the geometry
        H (HamiltonianSpec): the Hamiltonian
        k (int): tensor power
        mode (ToeplitzMode or str): quantization
        truncation (int): Bargmann-Fock truncation, None for the default
        quadrature (QuadratureRule): rule to use, None for the default

    Returns:
        basis (SectionBasis): the section basis
        spec (SpectralData): the spectrum of H_k
        matrix (ToeplitzMatrix): the assembled matrix

    """
    basis = build_basis(model, k, truncation=truncation, quadrature=quadrature)
    matrix = build_toeplitz(model, H, basis, mode)
    return basis, diagonalize(matrix), matrix
