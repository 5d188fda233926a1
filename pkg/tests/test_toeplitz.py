import numpy as np
import pytest
from numpy.testing import assert_allclose

from bergmanlab._core.errors import DimensionMismatch, EigensolverFailure
from bergmanlab.bfmodel import LiftedPoint, bf_linear_propagator
from bergmanlab.quantization import (
    ToeplitzMode,
    boundary_modes,
    build_basis,
    build_toeplitz,
    diagonalize,
    eigensection_masses,
    propagator_kernel,
    propagator_matrix,
    quantize,
)


def _sphere_grid(n=400):
    theta = np.linspace(1e-3, np.pi - 2e-3, n)
    phi = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return (np.tan(theta / 2)[:, None] * np.exp(1j * phi)[None, :]).ravel()


def test_bf_radial_kostant_is_number_operator(bf, bf_radial):
    k = 10
    basis = build_basis(bf, k)
    M = build_toeplitz(bf, bf_radial, basis, ToeplitzMode.KOSTANT)
    assert_allclose(np.diag(M.entries).real, np.arange(basis.count) / k, atol=1e-10)
    assert np.max(np.abs(M.entries - np.diag(np.diag(M.entries)))) <= 1e-10
    assert M.hermitian_defect <= 1e-6


def test_bf_radial_multiplication_shift(bf, bf_radial):
    k = 10
    basis = build_basis(bf, k)
    kostant = build_toeplitz(bf, bf_radial, basis, "Kostant")
    mult = build_toeplitz(bf, bf_radial, basis, "Multiplication")
    j = np.arange(basis.count)
    assert_allclose(np.diag(mult.entries).real, (j + 1) / k, atol=1e-10)
    gap = np.diag(mult.entries - kostant.entries).real
    assert_allclose(gap, np.full(basis.count, 1 / k), atol=1e-10)


def test_fs_height_is_diagonal(fs, fs_north):
    k = 12
    basis = build_basis(fs, k)
    kostant = build_toeplitz(fs, fs_north, basis, ToeplitzMode.KOSTANT)
    mult = build_toeplitz(fs, fs_north, basis, ToeplitzMode.MULTIPLICATION)
    for M in (kostant, mult):
        off = M.entries - np.diag(np.diag(M.entries))
        assert np.max(np.abs(off)) <= 1e-10
    j = np.arange(k + 1)
    assert_allclose(np.diag(kostant.entries).real, j / k, atol=1e-10)
    assert_allclose(np.diag(mult.entries).real, (j + 1) / (k + 2), atol=1e-10)


def test_symmetrized_matrix_is_hermitian(skew_8):
    _, _, matrix = skew_8
    assert np.array_equal(matrix.entries, matrix.entries.conj().T)
    assert matrix.hermitian_defect <= 1e-6
    assert matrix.hamiltonian_label == "fs_skew"


def test_multiplication_spectrum_contained(fs, fs_skew):
    _, spec, _ = quantize(fs, fs_skew, 8, ToeplitzMode.MULTIPLICATION)
    values = fs_skew.value(_sphere_grid())
    assert spec.eigenvalues.min() >= values.min() - 1e-8
    assert spec.eigenvalues.max() <= values.max() + 1e-8


def test_kostant_spectrum_near_range(skew_8, fs_skew):
    k = 8
    _, spec, _ = skew_8
    values = fs_skew.value(_sphere_grid())
    assert spec.eigenvalues.min() >= values.min() - 0.5 / k
    assert spec.eigenvalues.max() <= values.max() + 0.5 / k


def test_eigenvectors_unitary(skew_8):
    _, spec, matrix = skew_8
    V = spec.eigenvectors
    assert np.max(np.abs(V.conj().T @ V - np.eye(spec.count))) <= 1e-8
    assert np.all(np.diff(spec.eigenvalues) >= 0)
    assert spec.k == 8
    residual = matrix.entries @ V - V * spec.eigenvalues
    bound = 1e-8 * np.max(np.abs(spec.eigenvalues))
    assert np.max(np.linalg.norm(residual, axis=0)) <= bound


def test_diagonalize_rejects_nan():
    with pytest.raises(EigensolverFailure):
        diagonalize(np.array([[1.0, np.nan], [np.nan, 0.0]]), k=1)


def test_diagonalize_plain_array_needs_k():
    entries = np.array([[1.0, 0.5j], [-0.5j, 0.0]])
    with pytest.raises(ValueError, match="tensor power"):
        diagonalize(entries)
    spec = diagonalize(entries, k=4)
    assert spec.k == 4
    U = propagator_matrix(spec, 0.25)
    assert_allclose(U.conj().T @ U, np.eye(2), atol=1e-12)


def test_diagonalize_rejects_conflicting_k(skew_8):
    _, _, matrix = skew_8
    assert diagonalize(matrix).k == 8
    with pytest.raises(ValueError, match="k=9"):
        diagonalize(matrix, k=9)


def test_propagator_group_law(skew_8):
    _, spec, _ = skew_8
    U1 = propagator_matrix(spec, 0.3)
    U2 = propagator_matrix(spec, -0.7)
    assert_allclose(U1 @ U2, propagator_matrix(spec, -0.4), atol=1e-8)
    assert_allclose(np.linalg.norm(U1, axis=0), 1.0, atol=1e-8)


def test_propagator_modulus_even_in_time(skew_8):
    basis, spec, _ = skew_8
    z = 0.4 + 0.7j
    for t in (0.1, 0.5, 1.3):
        forward = propagator_kernel(spec, basis, t, z, z)
        backward = propagator_kernel(spec, basis, -t, z, z)
        assert_allclose(abs(forward), abs(backward), rtol=1e-8)


def test_bf_linear_propagator_matches_closed_form(linear_40):
    basis, spec = linear_40
    k = 40
    alpha = np.sqrt(2.0)
    samples = [(0.3 + 0.2j, 0.1 - 0.4j), (0.5j, 0.5j), (-0.7, 0.2 + 0.6j)]
    for t in (-1.0, -0.2, 0.4, 1.0):
        for z, w in samples:
            numeric = propagator_kernel(spec, basis, t, z, w)
            exact = bf_linear_propagator(k, t, alpha, LiftedPoint(z), LiftedPoint(w))
            assert abs(numeric - exact) <= 1e-6 * k / (2 * np.pi)


def test_masses_sum_to_full_density(skew_8):
    basis, spec, _ = skew_8
    masses = eigensection_masses(spec, basis, np.array([0.0, 2.0 - 1.0j]))
    assert masses.shape == (2, 9)
    assert np.all(masses >= 0)
    assert_allclose(masses.sum(axis=-1), 9 / (2 * np.pi), rtol=1e-8)


def test_boundary_modes(radial_40):
    _, spec = radial_40
    assert list(boundary_modes(spec, 0.5)) == [20]
    assert len(boundary_modes(spec, 0.5125)) == 0


def test_mismatched_basis(fs, skew_8):
    _, spec, _ = skew_8
    with pytest.raises(DimensionMismatch):
        eigensection_masses(spec, build_basis(fs, 6), 0.1)
