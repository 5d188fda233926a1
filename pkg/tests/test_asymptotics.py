import numpy as np
import pytest
from numpy.testing import assert_allclose

from bergmanlab._core.errors import CriticalPoint, DegenerateFit
from bergmanlab.asymptotics import (
    bulk_dichotomy,
    energy_localization_check,
    erf,
    erf_density,
    interface_profile,
    interface_target,
    intro_example_errors,
    offdiag_decay_fit,
    rate_fit,
    scaling_bridge,
    short_time_gaussian_check,
    short_time_gaussian_table,
    tauberian_gap,
    tauberian_table,
)
from bergmanlab.geometry import project_to_level_set
from bergmanlab.quantization import build_basis, quantize
from bergmanlab.spectral import Scaling, make_kernel, spectral_measure


def test_erf_normalization():
    assert erf(0.0) == 0.5
    assert_allclose(erf(1.0), 0.841345, atol=1e-6)
    x = np.linspace(-5, 5, 101)
    assert np.all(np.diff(erf(x)) > 0)
    assert_allclose(erf(-x) + erf(x), 1.0, atol=1e-15)
    h = 1e-5
    assert_allclose((erf(x + h) - erf(x - h)) / (2 * h), erf_density(x), atol=1e-8)


def test_rate_fit_exact_power_law():
    errors = [(k, 3.0 * k**-0.5) for k in (64, 128, 256, 512)]
    fit = rate_fit(errors)
    assert_allclose(fit.slope, -0.5, atol=1e-10)
    assert_allclose(fit.r_squared, 1.0, atol=1e-12)
    assert_allclose(fit.residuals(), 0.0, atol=1e-12)


def test_rate_fit_r_squared_is_consistent():
    fit = rate_fit([(10, 0.3), (20, 0.25), (40, 0.1), (80, 0.09)])
    assert_allclose(fit.r_squared, fit.recomputed_r_squared(), rtol=1e-10)
    assert set(fit.to_dict()) == {"slope", "intercept", "r_squared", "points"}


def test_rate_fit_degenerate():
    with pytest.raises(DegenerateFit):
        rate_fit([(10, 0.1), (20, 0.05)])
    with pytest.raises(DegenerateFit):
        rate_fit([(10, 0.1), (10, 0.05), (10, 0.02)])
    with pytest.raises(DegenerateFit):
        rate_fit([(10, 0.1), (20, 0.0), (40, 0.02)])


def test_intro_example_erf_law():
    us = [-2.0, -1.0, 0.0, 1.0, 2.0]
    ks = [100, 1000, 10_000]
    table = intro_example_errors(ks, us)
    bound = 1.5 * table["k"] ** -0.5 * (1 + table["u"] ** 2)
    assert np.all(table["abs_error"] <= bound)
    sup = table.groupby("k")["abs_error"].max()
    fit = rate_fit(list(sup.items()))
    assert -0.65 <= fit.slope <= -0.35


def test_interface_target():
    assert interface_target(0.0, 0.8) == 0.5
    # |z|^2 on Bargmann-Fock at |z| = 1 has ||grad H|| = sqrt(2)
    assert_allclose(interface_target(0.7, np.sqrt(2.0)), erf(-1.4), rtol=1e-14)


def test_interface_profile_on_radial_example(bf, bf_radial, radial_40):
    betas = np.linspace(-1.0, 1.0, 5)
    profile = interface_profile(
        bf, bf_radial, 1.0, 1.0, betas, [40], spectra={40: radial_40}
    )
    rows = profile.rows
    assert list(rows.columns) == ["k", "beta", "ratio", "target", "abs_error"]
    assert_allclose(rows["target"], erf(-2.0 * rows["beta"]), atol=1e-12)
    assert_allclose(rows["abs_error"], np.abs(rows["ratio"] - rows["target"]))
    assert rows["ratio"].between(0, 1 + 1e-10).all()
    assert rows["abs_error"].max() <= 0.2
    assert profile.sup_errors()[0][0] == 40


def test_interface_profile_needs_level_set_anchor(bf, bf_radial, radial_40):
    with pytest.raises(ValueError):
        interface_profile(bf, bf_radial, 1.0, 0.9, [0.0], [40], spectra={40: radial_40})
    with pytest.raises(CriticalPoint):
        interface_profile(bf, bf_radial, 0.0, 0.0, [0.0], [40], spectra={40: radial_40})


def test_bulk_dichotomy_labels(bf_radial, radial_40):
    basis, spec = radial_40
    points = np.array([0.5, 0.5j, 1.0, np.sqrt(2.0)])
    table = bulk_dichotomy(spec, basis, bf_radial, 1.0, points)
    assert list(table["region"]) == ["allowed", "allowed", "interface", "forbidden"]
    allowed = table[table["region"] == "allowed"]
    assert (allowed["ratio"] >= 1 - 1e-3).all()


def test_scaling_bridge(bf, bf_radial, radial_40):
    basis, spec = radial_40
    table = scaling_bridge(bf, spec, basis, bf_radial, 1.0, 1.0, np.linspace(-2, 2, 9))
    assert np.all(table["gap"] <= 3 / np.sqrt(40))
    assert_allclose(table["alpha"], -2.0 * table["beta"])


def test_short_time_gaussian_law(bf_linear, linear_40):
    basis, spec = linear_40
    taus = np.linspace(-2, 2, 21)
    assert short_time_gaussian_check(spec, basis, bf_linear, 0.3 + 0.2j, taus) <= 1e-6
    table = short_time_gaussian_table(spec, basis, bf_linear, 0.3 + 0.2j, taus)
    assert_allclose(table["modulus"], table["modulus"][::-1].to_numpy(), rtol=1e-8)


def test_short_time_needs_regular_point(bf_radial, radial_40):
    basis, spec = radial_40
    with pytest.raises(CriticalPoint):
        short_time_gaussian_table(spec, basis, bf_radial, 0.0, [0.5])


def test_tauberian_table(fs, fs_skew, skew_8):
    basis, spec, _ = skew_8
    z0 = project_to_level_set(fs, fs_skew, 0.7 + 0.2j, 0.6)
    measure = spectral_measure(spec, basis, z0, Scaling.CLT, H=fs_skew)
    kernel = make_kernel("Fejer", 1 / np.sqrt(8))
    xs = np.linspace(-4, 4, 81)
    table = tauberian_table(measure, kernel, xs, float(fs_skew.grad_norm(z0)))
    assert np.all(np.diff(table["sharp"]) >= 0)
    assert_allclose(table["target"][40], measure.total_mass / 2)
    assert 0 <= tauberian_gap(measure, kernel, xs) <= 1


def test_decay_fit_on_bf(bf):
    spectra = {}
    for k in (10, 20):
        basis = build_basis(bf, k, truncation=120)
        spectra[k] = (basis, None)
    z = np.array([0.1, 0.2, 0.3, 0.4])
    dist = np.array([0.2, 0.4, 0.7, 0.95])
    pairs = [(complex(a), complex(a + d / np.sqrt(2))) for a, d in zip(z, dist)]
    fit = offdiag_decay_fit(bf, spectra, pairs)
    assert fit.beta_hat > 0
    rows = fit.rows
    expected = np.log(rows["k"] / (2 * np.pi)) - rows["k"] * rows["dist"] ** 2 / 4
    assert_allclose(rows["log_modulus"], expected, rtol=1e-9)
    assert set(fit.to_dict()) == {"beta_hat", "intercept", "r_squared"}


def test_decay_fit_checks_distances(bf):
    spectra = {10: (build_basis(bf, 10), None)}
    with pytest.raises(ValueError):
        offdiag_decay_fit(bf, spectra, [(0.0, 0.01)])
    with pytest.raises(DegenerateFit):
        offdiag_decay_fit(bf, spectra, [(0.0, 0.5)])


def test_localization_returns_pairs(bf_radial, radial_40):
    basis, spec = radial_40
    measured, predicted = energy_localization_check(
        spec, basis, bf_radial, 1.0, [-0.5, 0.0, 0.5]
    )
    assert measured.shape == predicted.shape == (3,)
    assert np.all(measured > 0)
    assert_allclose(predicted[0], predicted[2])


@pytest.mark.slow
def test_energy_localization_radial(bf, bf_radial):
    k = 400
    basis, spec, _ = quantize(bf, bf_radial, k)
    measured, predicted = energy_localization_check(spec, basis, bf_radial, 1.0, 0.0)
    assert abs(measured / predicted - 1) <= 0.1


@pytest.mark.slow
@pytest.mark.parametrize("label", ["fs_height", "fs_skew", "fs_skew_b"])
def test_bulk_dichotomy_on_sphere(fs, label, rng):
    from bergmanlab.geometry import make_hamiltonian

    H = make_hamiltonian(label, fs)
    basis, spec, _ = quantize(fs, H, 256)
    E = 0.6
    r = 3.0 * np.sqrt(rng.uniform(size=50))
    points = r * np.exp(1j * rng.uniform(0, 2 * np.pi, size=50))
    table = bulk_dichotomy(spec, basis, H, E, points)
    assert (table.loc[table["region"] == "allowed", "ratio"] >= 1 - 1e-3).all()
    assert (table.loc[table["region"] == "forbidden", "ratio"] <= 1e-3).all()


@pytest.mark.slow
def test_interface_rate_on_skew_hamiltonian(fs, fs_skew_b):
    E = 0.6
    z0 = project_to_level_set(fs, fs_skew_b, 0.7 + 0.2j, E)
    betas = np.linspace(-2, 2, 21)
    ks = [64, 128, 256, 512]
    profile = interface_profile(fs, fs_skew_b, E, z0, betas, ks)
    sup = [err for _, err in profile.sup_errors()]
    assert_allclose(sup, [0.043, 0.029, 0.018, 0.0087], rtol=0.15)
    assert all(b <= 1.1 * a for a, b in zip(sup, sup[1:]))
    fit = rate_fit(profile.sup_errors())
    assert -0.85 <= fit.slope <= -0.3


def _skew_anchor(fs, fs_skew):
    return project_to_level_set(fs, fs_skew, 0.7 + 0.2j, 0.6)


@pytest.mark.slow
def test_short_time_gaussian_on_skew_hamiltonian(fs, fs_skew, skew_spectrum):
    z0 = _skew_anchor(fs, fs_skew)
    taus = np.linspace(-2, 2, 21)
    errors = [
        short_time_gaussian_check(*skew_spectrum(k)[::-1], fs_skew, z0, taus)
        for k in (256, 1024)
    ]
    assert errors[0] <= 0.15
    assert errors[1] <= 0.6 * errors[0]


@pytest.mark.slow
@pytest.mark.parametrize("k, band", [(256, 0.2), (1024, 0.1)])
def test_energy_localization_on_skew_hamiltonian(
    fs, fs_skew, skew_spectrum, k, band
):
    basis, spec = skew_spectrum(k)
    alphas = [-1.0, -0.5, 0.0, 0.5, 1.0]
    measured, predicted = energy_localization_check(
        spec, basis, fs_skew, _skew_anchor(fs, fs_skew), alphas
    )
    ratio = measured / predicted
    assert np.all(ratio >= 1 - band)
    assert np.all(ratio <= 1 + band)


@pytest.mark.slow
def test_tauberian_gap_on_skew_hamiltonian(fs, fs_skew, skew_spectrum):
    z0 = _skew_anchor(fs, fs_skew)
    grad_norm = float(fs_skew.grad_norm(z0))
    xs = np.linspace(-4, 4, 161)
    gaps = []
    for k in (256, 1024):
        basis, spec = skew_spectrum(k)
        measure = spectral_measure(spec, basis, z0, Scaling.CLT, H=fs_skew)
        kernel = make_kernel("Fejer", 1 / np.sqrt(k))
        gaps.append(tauberian_gap(measure, kernel, xs))
        if k == 256:
            table = tauberian_table(measure, kernel, xs, grad_norm)
            deviation = np.abs(table["smoothed"] - table["target"])
            assert deviation.max() / measure.total_mass <= 0.1
    assert gaps[0] <= 0.12
    assert gaps[1] <= 1.1 * gaps[0]


@pytest.mark.slow
def test_offdiag_decay_on_sphere(fs, rng):
    z = rng.uniform(0.05, 0.5, size=10)
    dist = rng.uniform(0.15, 0.95, size=10)
    w = np.tan(np.arctan(z) + dist / np.sqrt(2))
    pairs = [(complex(a), complex(b)) for a, b in zip(z, w)]
    spectra = {k: (build_basis(fs, k), None) for k in (64, 128, 256)}
    fit = offdiag_decay_fit(fs, spectra, pairs)
    assert_allclose(fit.rows["dist"], np.tile(dist, 3), rtol=1e-9)
    assert fit.beta_hat > 0
