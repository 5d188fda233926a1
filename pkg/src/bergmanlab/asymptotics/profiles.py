"""Density-ratio profiles across the allowed region, the interface and the forbidden region."""

from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from bergmanlab._core.errors import CriticalPoint
from bergmanlab.geometry.flows import FieldKind, flow
from bergmanlab.quantization.toeplitz import ToeplitzMode, quantize
from bergmanlab.spectral.measures import (
    Scaling,
    cdf,
    partial_density_ratio,
    spectral_measure,
)

from .erf import erf

# Column schema of interface profiles
PROFILE_COLUMNS = ["k", "beta", "ratio", "target", "abs_error"]
# Largest |H(z0) - E| accepted for an interface anchor
LEVEL_TOLERANCE = 1e-10
# Smallest gradient norm accepted at an interface anchor
CRITICAL_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ProfileTable:
    """Density ratios along the gradient line through an interface point.

    Args:
        rows (DataFrame): columns k, beta, ratio, target, abs_error
        z0 (complex): anchor on the level set H = E
        grad_norm (float): ||grad H(z0)||

    """

    rows: pd.DataFrame = field(repr=False)
    z0: complex
    grad_norm: float

    def sup_errors(self):
        """Return [(k, max abs_error over beta)] in increasing k."""
        sup = self.rows.groupby("k")["abs_error"].max()
        return [(int(k), float(err)) for k, err in sup.items()]


def interface_target(beta, grad_norm):
    """Return the limiting ratio Erf(-sqrt(2) beta ||grad H||)."""
    return erf(-np.sqrt(2.0) * np.asarray(beta) * grad_norm)


def _check_anchor(H, E, z0):
    defect = abs(H.value(z0) - E)
    if defect > LEVEL_TOLERANCE:
        raise ValueError(
            "Anchor z0 = {0} is off the level set H = {1} by {2:.3g}; "
            "project it first".format(z0, E, defect)
        )
    grad_norm = float(H.grad_norm(z0))
    if grad_norm < CRITICAL_TOLERANCE:
        raise CriticalPoint("grad H vanishes at the anchor z0 = {0}".format(z0))
    return grad_norm


def interface_profile(
    model, H, E, z0, betas, ks, mode=ToeplitzMode.KOSTANT, spectra=None
):
    """Tabulate the partial density ratio at F^{beta/sqrt(k)}(z0).

    F^t is the gradient flow of H.  As k grows the ratio approaches
    Erf(-sqrt(2) beta ||grad H(z0)||).

    Args:
        model (GeometryModel): the geometry
        H (HamiltonianSpec): the Hamiltonian
        E (float): energy level, H(z0) = E
        z0 (complex): anchor on the level set
        betas (array of float): gradient-flow displacements
        ks (list of int): tensor powers
        mode (ToeplitzMode or str): quantization
        spectra (dict): optional {k: (basis, spec)} to reuse

    Returns:
        ProfileTable: the profile

    """
    z0 = complex(z0)
    grad_norm = _check_anchor(H, E, z0)
    spectra = spectra or {}
    betas = np.asarray(betas, dtype=float)
    target = interface_target(betas, grad_norm)

    rows = []
    for k in ks:
        basis, spec = spectra[k] if k in spectra else quantize(model, H, k, mode)[:2]
        points = np.array(
            [flow(model, H, z0, b / np.sqrt(k), FieldKind.GRADIENT).endpoint for b in betas]
        )
        ratio = partial_density_ratio(spec, basis, E, points).ratio
        rows.append(
            pd.DataFrame(
                {
                    "k": k,
                    "beta": betas,
                    "ratio": ratio,
                    "target": target,
                    "abs_error": np.abs(ratio - target),
                }
            )
        )
    table = pd.concat(rows, ignore_index=True) if rows else pd.DataFrame(
        columns=PROFILE_COLUMNS
    )
    return ProfileTable(rows=table[PROFILE_COLUMNS], z0=z0, grad_norm=grad_norm)


def bulk_dichotomy(spec, basis, H, E, points, margin=0.2):
    """Classify sample points and evaluate the partial density ratio there.

    Args:
        spec (SpectralData): spectrum of H_k
        basis (SectionBasis): basis of the eigenvectors
        H (HamiltonianSpec): the Hamiltonian
        E (float): energy threshold
        points (array of complex): sample points
        margin (float): points with |H - E| < margin are labelled "interface"

    Returns:
        DataFrame: columns k, re_z, im_z, H, ratio, region

    """
    points = np.asarray(points, dtype=complex)
    values = H.value(points)
    ratio = partial_density_ratio(spec, basis, E, points).ratio
    region = np.where(
        values <= E - margin,
        "allowed",
        np.where(values >= E + margin, "forbidden", "interface"),
    )
    return pd.DataFrame(
        {
            "k": basis.k,
            "re_z": points.real,
            "im_z": points.imag,
            "H": values,
            "ratio": ratio,
            "region": region,
        }
    )


def scaling_bridge(model, spec, basis, H, E, z0, betas):
    """Compare the interface ratio with the CLT cumulative at z0.

    Moving z0 by the gradient flow for time beta/sqrt(k) shifts the CLT
    measure by -beta ||grad H||^2 to leading order, so the ratio at
    F^{beta/sqrt(k)}(z0) and the CLT cumulative at alpha = -beta ||grad H||^2
    differ by O(k^{-1/2}).

    Args:
        model (GeometryModel): the geometry
        spec (SpectralData): spectrum of H_k
        basis (SectionBasis): basis of the eigenvectors
        H (HamiltonianSpec): the Hamiltonian
        E (float): energy level with H(z0) = E
        z0 (complex): anchor on the level set
        betas (array of float): gradient-flow displacements

    Returns:
        DataFrame: columns beta, alpha, interface, clt, gap

    """
    z0 = complex(z0)
    grad_norm = _check_anchor(H, E, z0)
    k = basis.k
    betas = np.asarray(betas, dtype=float)
    points = np.array(
        [flow(model, H, z0, b / np.sqrt(k), FieldKind.GRADIENT).endpoint for b in betas]
    )
    interface = partial_density_ratio(spec, basis, E, points).ratio
    measure = spectral_measure(spec, basis, z0, Scaling.CLT, H=H)
    alphas = -betas * grad_norm**2
    clt = cdf(measure, alphas) / measure.total_mass
    return pd.DataFrame(
        {
            "beta": betas,
            "alpha": alphas,
            "interface": interface,
            "clt": clt,
            "gap": np.abs(interface - clt),
        }
    )
