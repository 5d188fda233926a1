"""Power-law fits of errors against the tensor power."""

from dataclasses import dataclass

import numpy as np
from scipy.stats import linregress

from bergmanlab._core.errors import DegenerateFit

# Fewest (k, error) pairs accepted by rate_fit
MIN_POINTS = 3


@dataclass(frozen=True)
class RateFit:
    """Least-squares line log(error) = intercept + slope * log(k)."""

    slope: float
    intercept: float
    r_squared: float
    points: list

    def residuals(self):
        """Return log(error) minus the fitted line at every point."""
        x, y = np.array(self.points).T
        return y - (self.intercept + self.slope * x)

    def recomputed_r_squared(self):
        """Return 1 - SS_res / SS_tot from the stored points."""
        _, y = np.array(self.points).T
        return 1.0 - np.sum(self.residuals() ** 2) / np.sum((y - np.mean(y)) ** 2)

    def to_dict(self):
        """Return the fit as plain floats, e.g. for JSON output."""
        return {
            "slope": float(self.slope),
            "intercept": float(self.intercept),
            "r_squared": float(self.r_squared),
            "points": [[float(x), float(y)] for x, y in self.points],
        }


def rate_fit(errors):
    """Fit the decay rate of errors in k.

    Args:
        errors (list of (int, float)): pairs (k, sup_error), errors > 0

    Returns:
        RateFit: slope of log(error) against log(k), -0.5 for a k^(-1/2) law

    """
    if len(errors) < MIN_POINTS:
        raise DegenerateFit(
            "Need at least {0} points for a rate fit, got {1}".format(
                MIN_POINTS, len(errors)
            )
        )
    ks, errs = np.array(errors, dtype=float).T
    if np.any(~np.isfinite(errs)) or np.any(errs <= 0):
        raise DegenerateFit("Errors must be positive and finite for a log-log fit")
    if np.unique(ks).size < 2:
        raise DegenerateFit("All points share the same k")
    x = np.log(ks)
    y = np.log(errs)
    fit = linregress(x, y)
    return RateFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue**2),
        points=list(zip(x.tolist(), y.tolist())),
    )
