"""Closed-form Bargmann-Fock kernels on the reduced Heisenberg group C x S^1.

Points of the circle bundle are written (z, theta) in the frame
(z, theta) -> exp(i theta - |z|^2 / 2) e_L^*(z).  All kernels are the k-th
Fourier components, normalized so that the diagonal equals (k / 2 pi)^m.
"""

from dataclasses import dataclass

import numpy as np

# Complex dimension of the model
M = 1


@dataclass(frozen=True)
class LiftedPoint:
    """A point (z, theta) of the circle bundle, theta reduced to [0, 2 pi)."""

    z: complex
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "theta", float(np.mod(self.theta, 2.0 * np.pi)))


IDENTITY = LiftedPoint(0.0, 0.0)


def heisenberg_multiply(p, q):
    """Return the reduced Heisenberg product (z + z', theta + theta' + Im(z conj z')).

    Args:
        p (LiftedPoint): left factor
        q (LiftedPoint): right factor

    Returns:
        LiftedPoint: p o q

    """
    return LiftedPoint(p.z + q.z, p.theta + q.theta + np.imag(p.z * np.conj(q.z)))


def heisenberg_inverse(p):
    """Return (-z, -theta), the inverse of p."""
    return LiftedPoint(-p.z, -p.theta)


def bf_szego_kernel(k, a, b):
    """Return the degree-k Szegö kernel of the Heisenberg model.

    (k / 2 pi)^m exp(i k (theta_a - theta_b + Im(z_a conj z_b)) - k |z_a - z_b|^2 / 2)

    Args:
        k (int): tensor power, k >= 1
        a (LiftedPoint): first point
        b (LiftedPoint): second point

    Returns:
        complex: the kernel value

    """
    phase = a.theta - b.theta + np.imag(a.z * np.conj(b.z))
    return (k / (2.0 * np.pi)) ** M * np.exp(
        1j * k * phase - 0.5 * k * abs(a.z - b.z) ** 2
    )


def bf_linear_propagator(k, t, alpha, a, b):
    """Return the propagator kernel of H = Re(alpha conj z) on the Heisenberg model.

    The Hamiltonian flow is the translation z -> z + alpha t / 2i, and its
    quantization exp(i t k H_k) has the kernel

        (k/2pi)^m exp(i k (theta_a + Re(alpha conj z_a) t / 2 - theta_b
                           + Im((z_a - alpha t / 2i) conj z_b))
                      - k |z_a - alpha t / 2i - z_b|^2 / 2)

    On the diagonal this is (k/2pi)^m exp(i k H t) exp(-k t^2 ||xi_H||^2 / 4)
    with ||xi_H||^2 = |alpha|^2 / 2.

    Args:
        k (int): tensor power
        t (float): time
        alpha (complex): direction of the linear Hamiltonian
        a (LiftedPoint): first point
        b (LiftedPoint): second point

    Returns:
        complex: the kernel value

    """
    shifted = a.z - alpha * t / 2j
    phase = (
        a.theta
        + 0.5 * np.real(alpha * np.conj(a.z)) * t
        - b.theta
        + np.imag(shifted * np.conj(b.z))
    )
    return (k / (2.0 * np.pi)) ** M * np.exp(
        1j * k * phase - 0.5 * k * abs(shifted - b.z) ** 2
    )
