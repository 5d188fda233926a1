"""The error function in its normal-distribution normalization.

Throughout bergmanlab, Erf(x) is the standard normal cumulative

    Erf(x) = integral_{-inf}^x exp(-s^2 / 2) ds / sqrt(2 pi),

so Erf(0) = 1/2.  The classical 2/sqrt(pi) integral_0^x exp(-s^2) ds is
related by Erf(x) = (1 + erf(x / sqrt(2))) / 2; do not mix the two.
"""

import numpy as np
from scipy.special import ndtr


def erf(x):
    """Return the standard normal cumulative at x."""
    return ndtr(x)


def erf_density(x):
    """Return the derivative of erf, the standard normal density."""
    return np.exp(-0.5 * np.asarray(x) ** 2) / np.sqrt(2.0 * np.pi)
