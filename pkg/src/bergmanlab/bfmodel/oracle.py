"""Exact partial density ratio of the radial Bargmann-Fock example."""

import numpy as np
from scipy.special import pdtr

# Relative slack when deciding whether j <= eps k for integer-valued eps k
_TIE_SLACK = 1e-12


def poisson_ratio_oracle(k, eps, z):
    """Return Pi_{k,eps}(z) / Pi_k(z) for H = |z|^2 on Bargmann-Fock.

    The eigensections of H_k are the monomials z^j with eigenvalue j / k, so

        Pi_{k,eps}(z) / Pi_k(z) = sum_{j <= eps k} exp(-k|z|^2) (k|z|^2)^j / j!,

    the cumulative Poisson distribution of mean k|z|^2 at eps k.  The sum is
    evaluated through the regularized incomplete gamma function, which stays
    accurate where k^j / j! would overflow.

    Args:
        k (int): tensor power, k >= 1
        eps (float): energy threshold, eps > 0
        z (complex or array of complex): evaluation point(s)

    Returns:
        float or ndarray: the ratio in [0, 1]

    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not eps > 0:
        raise ValueError("eps must be positive")
    j_max = np.floor(eps * k * (1.0 + _TIE_SLACK))
    return pdtr(j_max, k * np.abs(np.asarray(z)) ** 2)
