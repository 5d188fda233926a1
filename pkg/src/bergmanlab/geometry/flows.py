"""Vector fields of a Hamiltonian, their flows, and the contact lift to the circle bundle."""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from bergmanlab._core.errors import CriticalPoint, NonFiniteState
from bergmanlab.bfmodel.heisenberg import LiftedPoint

# Default fixed RK4 step
DT_MAX = 1e-3


class FieldKind(str, Enum):
    """Which vector field of H to follow."""

    HAMILTONIAN = "Hamiltonian"
    GRADIENT = "Gradient"


@dataclass(frozen=True)
class FlowResult:
    """Endpoint of a fixed-step RK4 integration."""

    endpoint: complex
    steps: int
    field_kind: FieldKind


def _check_compatible(model, H):
    if H.model.kind is not model.kind:
        raise ValueError(
            "Hamiltonian `{0}` lives on {1}, not on {2}".format(
                H.label, H.model.kind.value, model.kind.value
            )
        )


def fields_at(model, H, z):
    """Evaluate the Hamiltonian and gradient vector fields of H at z.

    Args:
        model (GeometryModel): the geometry
        H (HamiltonianSpec): the Hamiltonian
        z (complex): point in the chart

    Returns:
        xi_H (ndarray): Hamiltonian vector field as a real 2-vector
        grad_H (ndarray): metric gradient, equal to J xi_H
        norm_xi (float): ||xi_H|| = ||grad H|| in the metric g

    """
    _check_compatible(model, H)
    model.check_in_chart(z)
    grad = H.grad_complex(z)
    xi = -1j * grad
    norm_xi = float(np.abs(grad) * np.sqrt(2.0 * model.metric_coeff(z)))
    return (
        np.array([np.real(xi), np.imag(xi)]),
        np.array([np.real(grad), np.imag(grad)]),
        norm_xi,
    )


def _field(H, field_kind):
    if FieldKind(field_kind) is FieldKind.HAMILTONIAN:
        return H.xi_complex
    return H.grad_complex


def _n_steps(t, dt_max):
    if t == 0:
        return 0
    return max(1, int(np.ceil(abs(t) / dt_max)))


def flow(model, H, z0, t, field_kind, dt_max=DT_MAX):
    """Integrate the Hamiltonian or gradient flow of H with classical RK4.

    Args:
        model (GeometryModel): the geometry
        H (HamiltonianSpec): the Hamiltonian
        z0 (complex): starting point
        t (float): flow time, may be negative
        field_kind (FieldKind or str): "Hamiltonian" or "Gradient"
        dt_max (float): largest allowed step

    Returns:
        FlowResult: endpoint, number of steps, field kind

    """
    _check_compatible(model, H)
    field_kind = FieldKind(field_kind)
    model.check_in_chart(z0)
    vector_field = _field(H, field_kind)

    n = _n_steps(t, dt_max)
    z = complex(z0)
    if n > 0:
        dt = t / n
        for _ in range(n):
            k1 = vector_field(z)
            k2 = vector_field(z + 0.5 * dt * k1)
            k3 = vector_field(z + 0.5 * dt * k2)
            k4 = vector_field(z + dt * k3)
            z = complex(z + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0)
            if not np.isfinite(z):
                raise NonFiniteState(
                    "{0} flow of `{1}` overflowed".format(field_kind.value, H.label)
                )
            model.check_in_chart(z)
    return FlowResult(endpoint=z, steps=n, field_kind=field_kind)


def contact_lift_rate(model, H, z):
    """Return the fiber-angle speed d theta / dt of the contact lift of xi_H.

    The lift is xi_H^h - H R, and in the frame coordinates (z, theta) its theta
    component is (1/2) <d^c phi, xi_H> - H = -Im(dphi/dz * xi) - H.

    Args:
        model (GeometryModel): the geometry
        H (HamiltonianSpec): the Hamiltonian
        z (complex): point in the chart

    Returns:
        float: d theta / dt

    """
    _check_compatible(model, H)
    model.check_in_chart(z)
    return float(-np.imag(model.potential_dz(z) * H.xi_complex(z)) - H.value(z))


def lifted_flow(model, H, start, t, dt_max=DT_MAX):
    """Integrate the contact lift of the Hamiltonian flow on the circle bundle.

    Args:
        model (GeometryModel): the geometry
        H (HamiltonianSpec): the Hamiltonian
        start (LiftedPoint): starting point (z, theta)
        t (float): flow time
        dt_max (float): largest allowed step

    Returns:
        LiftedPoint: endpoint with theta reduced mod 2 pi

    """
    _check_compatible(model, H)
    model.check_in_chart(start.z)

    def rhs(state):
        z = state[0]
        return np.array(
            [
                H.xi_complex(z),
                -np.imag(model.potential_dz(z) * H.xi_complex(z)) - H.value(z),
            ],
            dtype=complex,
        )

    state = np.array([start.z, start.theta], dtype=complex)
    n = _n_steps(t, dt_max)
    if n > 0:
        dt = t / n
        for _ in range(n):
            k1 = rhs(state)
            k2 = rhs(state + 0.5 * dt * k1)
            k3 = rhs(state + 0.5 * dt * k2)
            k4 = rhs(state + dt * k3)
            state = state + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            if not np.all(np.isfinite(state)):
                raise NonFiniteState("Lifted flow of `{0}` overflowed".format(H.label))
            model.check_in_chart(state[0])
    return LiftedPoint(complex(state[0]), float(np.real(state[1])))


def project_to_level_set(model, H, z, E, tol=1e-10, max_iter=50):
    """Move z onto the level set H = E by Newton steps along grad H.

    Args:
        model (GeometryModel): the geometry
        H (HamiltonianSpec): the Hamiltonian
        z (complex): starting point near the level set
        E (float): energy level
        tol (float): required |H(z) - E|
        max_iter (int): iteration cap

    Returns:
        complex: a point with |H - E| <= tol

    """
    _check_compatible(model, H)
    z = complex(z)
    for _ in range(max_iter):
        model.check_in_chart(z)
        defect = H.value(z) - E
        if abs(defect) <= tol:
            return z
        grad = H.grad_complex(z)
        # dH(grad H) = ||grad H||^2 in the metric g
        slope = 2.0 * model.metric_coeff(z) * np.abs(grad) ** 2
        if slope < 1e-16:
            raise CriticalPoint(
                "grad H vanishes at z = {0} while projecting onto H = {1}".format(z, E)
            )
        z = complex(z - defect / slope * grad)
    logging.warning(
        "Level-set projection stopped after {0} iterations with |H - E| = {1:.3g}".format(
            max_iter, abs(H.value(z) - E)
        )
    )
    return z
