"""Closed-form Hamiltonians with analytic derivatives.

A Hamiltonian is stored through its value H(z) and its holomorphic derivative
dH/dz.  Since H is real, dH/dz-bar = conj(dH/dz), and everything else follows:

    metric gradient      grad H = conj(dH/dz) / lambda          (as a complex number)
    Hamiltonian field    xi_H   = -i grad H                     (iota_xi omega = dH)
    (1,0) part of xi_H   a      = -i conj(dH/dz) / lambda       (xi_H = a d/dz + c.c.)

so grad H = J xi_H, and ||xi_H|| = ||grad H|| = |grad H| sqrt(2 lambda).

Registered families: the Bargmann-Fock linear and radial Hamiltonians, Möbius
heights (A|z|^2 + 2 Re(B conj z) + C) / (1 + |z|^2) on CP^1, and real linear
combinations and squares of these.
"""

from dataclasses import dataclass, field

import numpy as np

from .models import ModelKind


@dataclass(frozen=True)
class HamiltonianSpec:
    """A real Hamiltonian on a model geometry with its analytic derivative.

    Args:
        label (str): registered family label, e.g. "fs_skew"
        model (GeometryModel): geometry the Hamiltonian lives on
        value_fn (callable): z -> H(z), real
        dz_fn (callable): z -> dH/dz, complex
        params (dict): parameters used to build the Hamiltonian

    """

    label: str
    model: object
    value_fn: object = field(repr=False)
    dz_fn: object = field(repr=False)
    params: dict = field(default_factory=dict)

    def value(self, z):
        """Return H(z)."""
        return np.real(self.value_fn(z))

    def dz(self, z):
        """Return dH/dz."""
        return self.dz_fn(z)

    def grad_complex(self, z):
        """Return the metric gradient of H as a complex number x + iy."""
        return np.conj(self.dz_fn(z)) / self.model.metric_coeff(z)

    def xi_complex(self, z):
        """Return the Hamiltonian vector field as a complex number."""
        return -1j * self.grad_complex(z)

    def grad(self, z):
        """Return the metric gradient of H as a real 2-vector (last axis)."""
        g = self.grad_complex(z)
        return np.stack([np.real(g), np.imag(g)], axis=-1)

    def grad_norm(self, z):
        """Return ||grad H(z)|| in the metric g = 2 lambda |dz|^2."""
        return np.abs(self.grad_complex(z)) * np.sqrt(2.0 * self.model.metric_coeff(z))


## Families


def bf_linear(model, alpha):
    """Return H(z) = Re(alpha conj(z)) on Bargmann-Fock.

    Args:
        model (GeometryModel): a Bargmann-Fock model
        alpha (complex): direction of the linear Hamiltonian

    """
    _require_kind(model, ModelKind.BARGMANN_FOCK, "bf_linear")
    alpha = complex(alpha)
    return HamiltonianSpec(
        label="bf_linear",
        model=model,
        value_fn=lambda z: np.real(alpha * np.conj(z)),
        dz_fn=lambda z: np.conj(alpha) / 2.0 + 0.0 * np.asarray(z),
        params={"alpha_re": alpha.real, "alpha_im": alpha.imag},
    )


def bf_radial(model):
    """Return H(z) = |z|^2 on Bargmann-Fock."""
    _require_kind(model, ModelKind.BARGMANN_FOCK, "bf_radial")
    return HamiltonianSpec(
        label="bf_radial",
        model=model,
        value_fn=lambda z: np.abs(z) ** 2,
        dz_fn=lambda z: np.conj(z),
    )


def mobius_height(model, A, B, C, label="fs_mobius"):
    """Return H(z) = (A|z|^2 + 2 Re(B conj z) + C) / (1 + |z|^2) on CP^1.

    Args:
        model (GeometryModel): a Fubini-Study model
        A (float): coefficient of |z|^2
        B (complex): coefficient of conj(z)
        C (float): constant coefficient
        label (str): label to store

    """
    _require_kind(model, ModelKind.FUBINI_STUDY_CP1, label)
    A, B, C = float(A), complex(B), float(C)

    def value(z):
        numerator = A * np.abs(z) ** 2 + 2.0 * np.real(B * np.conj(z)) + C
        return numerator / (1.0 + np.abs(z) ** 2)

    def dz(z):
        denominator = 1.0 + np.abs(z) ** 2
        numerator = A * np.abs(z) ** 2 + 2.0 * np.real(B * np.conj(z)) + C
        return ((A * np.conj(z) + np.conj(B)) * denominator - numerator * np.conj(z)) / (
            denominator**2
        )

    return HamiltonianSpec(
        label=label,
        model=model,
        value_fn=value,
        dz_fn=dz,
        params={"A": A, "B_re": B.real, "B_im": B.imag, "C": C},
    )


def fs_height(model, axis=(0.0, 0.0, 1.0)):
    """Return the height function (1 + <axis, x>) / 2 of the round sphere.

    The sphere point x is the inverse stereographic image of z, so the height
    takes values in [0, 1] with its maximum at the point the axis points to.

    Args:
        model (GeometryModel): a Fubini-Study model
        axis (sequence of 3 floats): direction of the height, normalized here

    """
    ax, ay, az = np.asarray(axis, dtype=float) / np.linalg.norm(axis)
    spec = mobius_height(
        model, (1.0 + az) / 2.0, complex(ax, ay) / 2.0, (1.0 - az) / 2.0, "fs_height"
    )
    return _relabel(spec, "fs_height", {"axis": [float(ax), float(ay), float(az)]})


def linear_combination(terms, label="combination"):
    """Return sum_i c_i H_i for real coefficients.

    Args:
        terms (list of (float, HamiltonianSpec)): coefficients and Hamiltonians,
        all on the same model
        label (str): label to store

    """
    model = terms[0][1].model
    if any(h.model is not model for _, h in terms):
        raise ValueError("All terms of a combination must share one model")
    coeffs = [float(c) for c, _ in terms]
    parts = [h for _, h in terms]

    return HamiltonianSpec(
        label=label,
        model=model,
        value_fn=lambda z: sum(c * h.value(z) for c, h in zip(coeffs, parts)),
        dz_fn=lambda z: sum(c * h.dz(z) for c, h in zip(coeffs, parts)),
        params={"terms": [(c, h.label) for c, h in zip(coeffs, parts)]},
    )


def square(H, label=None):
    """Return H^2, with d(H^2)/dz = 2 H dH/dz."""
    return HamiltonianSpec(
        label=label or "{0}^2".format(H.label),
        model=H.model,
        value_fn=lambda z: H.value(z) ** 2,
        dz_fn=lambda z: 2.0 * H.value(z) * H.dz(z),
        params={"base": H.label},
    )


def fs_skew(model):
    """Return h_N + 0.3 h_N^2 + 0.2 h_X, a Hamiltonian without S^1 symmetry.

    h_N and h_X are heights along the north and x axes of the sphere.
    """
    h_north = fs_height(model, (0.0, 0.0, 1.0))
    h_x = fs_height(model, (1.0, 0.0, 0.0))
    return linear_combination(
        [(1.0, h_north), (0.3, square(h_north)), (0.2, h_x)], label="fs_skew"
    )


def fs_skew_b(model):
    """Return h_N + 0.2 h_X^2 + 0.15 h_Y, a second non-symmetric test Hamiltonian."""
    h_north = fs_height(model, (0.0, 0.0, 1.0))
    h_x = fs_height(model, (1.0, 0.0, 0.0))
    h_y = fs_height(model, (0.0, 1.0, 0.0))
    return linear_combination(
        [(1.0, h_north), (0.2, square(h_x)), (0.15, h_y)], label="fs_skew_b"
    )


## Registry

# label -> (factory, model kind, description)
_REGISTRY = {
    "bf_linear": (
        lambda model, alpha_re=np.sqrt(2.0), alpha_im=0.0: bf_linear(
            model, complex(alpha_re, alpha_im)
        ),
        ModelKind.BARGMANN_FOCK,
        "Re(alpha conj z); params alpha_re, alpha_im",
    ),
    "bf_radial": (
        lambda model: bf_radial(model),
        ModelKind.BARGMANN_FOCK,
        "|z|^2 (S^1-symmetric)",
    ),
    "fs_height": (
        lambda model, axis=(0.0, 0.0, 1.0): fs_height(model, axis),
        ModelKind.FUBINI_STUDY_CP1,
        "(1 + <axis, x>)/2 on the sphere; param axis = [ax, ay, az]",
    ),
    "fs_mobius": (
        lambda model, A=1.0, B_re=0.0, B_im=0.0, C=0.0: mobius_height(
            model, A, complex(B_re, B_im), C
        ),
        ModelKind.FUBINI_STUDY_CP1,
        "(A|z|^2 + 2Re(B conj z) + C)/(1+|z|^2); params A, B_re, B_im, C",
    ),
    "fs_skew": (
        lambda model: fs_skew(model),
        ModelKind.FUBINI_STUDY_CP1,
        "h_N + 0.3 h_N^2 + 0.2 h_X (no S^1 symmetry)",
    ),
    "fs_skew_b": (
        lambda model: fs_skew_b(model),
        ModelKind.FUBINI_STUDY_CP1,
        "h_N + 0.2 h_X^2 + 0.15 h_Y (no S^1 symmetry)",
    ),
}


def registered_hamiltonians():
    """Return {label: (model kind, description)} for every registered family."""
    return {label: (kind.value, text) for label, (_, kind, text) in _REGISTRY.items()}


def make_hamiltonian(label, model, **params):
    """Build a registered Hamiltonian.

    Args:
        label (str): registered label, see registered_hamiltonians()
        model (GeometryModel): the geometry; must match the family's model kind
        **params: family parameters

    Returns:
        HamiltonianSpec: the Hamiltonian

    """
    if label not in _REGISTRY:
        raise KeyError(
            "Unknown Hamiltonian `{0}`; registered: {1}".format(
                label, ", ".join(_REGISTRY)
            )
        )
    factory, kind, _ = _REGISTRY[label]
    _require_kind(model, kind, label)
    spec = factory(model, **params)
    return _relabel(spec, label, {**spec.params, **params})


def _require_kind(model, kind, label):
    if model.kind is not kind:
        raise ValueError(
            "Hamiltonian `{0}` needs a {1} model, got {2}".format(
                label, kind.value, model.kind.value
            )
        )


def _relabel(spec, label, params):
    return HamiltonianSpec(
        label=label,
        model=spec.model,
        value_fn=spec.value_fn,
        dz_fn=spec.dz_fn,
        params=params,
    )
