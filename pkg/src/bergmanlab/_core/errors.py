"""Exceptions raised by bergmanlab.

Every error derives from BergmanLabError so callers (e.g. the command line
interface) can separate problems in the lab from programming errors.
"""


class BergmanLabError(Exception):
    """Base class for all bergmanlab errors."""


class OutsideChart(BergmanLabError):
    """A point or a flow trajectory left the coordinate chart of the model."""


class NonFiniteState(BergmanLabError):
    """A numerical integration produced inf or nan."""


class InvalidResolution(BergmanLabError):
    """Quadrature or basis resolution is too coarse for the requested tensor power."""


class DimensionMismatch(BergmanLabError):
    """Coefficient vectors, bases, or spectral data have incompatible sizes."""


class QuadratureDefect(BergmanLabError):
    """A quadrature consistency check failed (Hermiticity, norms)."""


class EigensolverFailure(BergmanLabError):
    """The dense Hermitian eigensolver failed or returned an inaccurate result."""


class EmptySpectrum(BergmanLabError):
    """Spectral data contains no eigenvalues."""


class MissingTau(BergmanLabError):
    """The energy scaling of a spectral measure needs a tau value."""


class InvalidWidth(BergmanLabError):
    """A smoothing kernel width is not a positive number."""


class CriticalPoint(BergmanLabError):
    """The Hamiltonian gradient vanishes where a regular point is required."""


class DegenerateFit(BergmanLabError):
    """A least-squares fit has too few points or no spread in the regressor."""


class ConfigError(BergmanLabError):
    """The configuration file is invalid.

    Args:
        field (str): name of the offending configuration field
        message (str): what is wrong with it

    """

    def __init__(self, field, message):
        self.field = field
        super().__init__("Config field `{0}`: {1}".format(field, message))


class PipelineError(BergmanLabError):
    """A numerical stage of an experiment failed.

    Args:
        stage (str): name of the stage that failed, e.g. "diagonalize k=256"
        cause (Exception): the underlying error

    """

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__("Stage `{0}` failed: {1}".format(stage, cause))


class OutputError(BergmanLabError):
    """Results could not be written to the output directory."""
