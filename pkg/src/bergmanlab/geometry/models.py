"""Model Kähler geometries: Bargmann-Fock on C and Fubini-Study on CP^1.

Both models live in a single holomorphic chart z of complex dimension m = 1.
The Hermitian metric on the line bundle is h(e_L, e_L) = exp(-phi), the Kähler
form is omega = i lambda(z) dz ^ dz-bar with lambda = d^2 phi / dz dz-bar, and
the Riemannian metric is g = omega(-, J -) = 2 lambda (dx^2 + dy^2).  Volumes use
dVol = omega^m / m!, so the Euclidean area element is multiplied by 2 lambda.
"""

from abc import ABC, abstractmethod
from enum import Enum

import numpy as np

from bergmanlab._core.errors import OutsideChart

# Complex dimension of both models
COMPLEX_DIMENSION = 1


class ModelKind(str, Enum):
    """Which model geometry is used."""

    BARGMANN_FOCK = "BargmannFock"
    FUBINI_STUDY_CP1 = "FubiniStudyCP1"


class GeometryModel(ABC):
    """A model Kähler surface given in one holomorphic chart."""

    kind = None

    def __init__(self, chart_radius=np.inf):
        """Store the chart.

        Args:
            chart_radius (float): points with |z| > chart_radius are outside the
            chart

        """
        if not chart_radius > 0:
            raise ValueError("chart_radius must be positive")
        self.chart_radius = float(chart_radius)
        self.m = COMPLEX_DIMENSION

    @abstractmethod
    def potential(self, z):
        """Return the Kähler potential phi(z)."""

    @abstractmethod
    def potential_dz(self, z):
        """Return the holomorphic derivative d phi / dz at z."""

    @abstractmethod
    def metric_coeff(self, z):
        """Return lambda(z) > 0 such that omega = i lambda dz ^ dz-bar."""

    @abstractmethod
    def distance(self, z, w):
        """Return the Riemannian distance between z and w."""

    @property
    @abstractmethod
    def total_volume(self):
        """Total volume of the model (inf for non-compact models)."""

    def volume_density(self, z):
        """Return dVol / (dx dy), i.e. 2 lambda(z)."""
        return 2.0 * self.metric_coeff(z)

    def check_in_chart(self, z):
        """Raise OutsideChart if any point lies outside the chart.

        Args:
            z (complex or array of complex): point(s) to check

        """
        radius = np.max(np.abs(np.asarray(z)))
        if not radius <= self.chart_radius:
            raise OutsideChart(
                "|z| = {0:.6g} exceeds the chart radius {1:.6g} of the {2} model".format(
                    radius, self.chart_radius, self.kind.value
                )
            )

    def __repr__(self):
        return "{0}(chart_radius={1})".format(type(self).__name__, self.chart_radius)


class BargmannFockModel(GeometryModel):
    """Flat model on C with phi = |z|^2 and omega = i dz ^ dz-bar."""

    kind = ModelKind.BARGMANN_FOCK

    def potential(self, z):
        """Return |z|^2."""
        return np.abs(z) ** 2

    def potential_dz(self, z):
        """Return conj(z)."""
        return np.conj(z)

    def metric_coeff(self, z):
        """Return 1 everywhere."""
        return np.ones_like(np.abs(z), dtype=float)

    def distance(self, z, w):
        """Return sqrt(2) |z - w| (g = 2 |dz|^2)."""
        return np.sqrt(2.0) * np.abs(np.asarray(z) - np.asarray(w))

    @property
    def total_volume(self):
        """Infinite."""
        return np.inf


class FubiniStudyModel(GeometryModel):
    """CP^1 in the north chart, phi = log(1 + |z|^2), total volume 2 pi."""

    kind = ModelKind.FUBINI_STUDY_CP1

    def __init__(self, chart_radius=1e3):
        super().__init__(chart_radius)

    def potential(self, z):
        """Return log(1 + |z|^2)."""
        return np.log1p(np.abs(z) ** 2)

    def potential_dz(self, z):
        """Return conj(z) / (1 + |z|^2)."""
        return np.conj(z) / (1.0 + np.abs(z) ** 2)

    def metric_coeff(self, z):
        """Return (1 + |z|^2)^-2."""
        return (1.0 + np.abs(z) ** 2) ** -2

    def distance(self, z, w):
        """Return the great-circle distance on the sphere of area 2 pi.

        The sphere has radius 1/sqrt(2), and the angle between the points is
        2 arctan(|z - w| / |1 + conj(z) w|).
        """
        z = np.asarray(z)
        w = np.asarray(w)
        angle = 2.0 * np.arctan2(np.abs(z - w), np.abs(1.0 + np.conj(z) * w))
        return angle / np.sqrt(2.0)

    @property
    def total_volume(self):
        """2 pi, the integral of omega."""
        return 2.0 * np.pi


def make_model(kind, chart_radius=None):
    """Create a model geometry from its kind.

    Args:
        kind (str or ModelKind): "BargmannFock" or "FubiniStudyCP1"
        chart_radius (float): optional chart cutoff; defaults to inf for
        Bargmann-Fock and 1e3 for Fubini-Study

    Returns:
        GeometryModel: the model

    """
    kind = ModelKind(kind)
    if kind is ModelKind.BARGMANN_FOCK:
        return BargmannFockModel(np.inf if chart_radius is None else chart_radius)
    return FubiniStudyModel(1e3 if chart_radius is None else chart_radius)


def geodesic_distance(model, z, w):
    """Return the Riemannian distance between z and w in the model metric."""
    model.check_in_chart(z)
    model.check_in_chart(w)
    return model.distance(z, w)
