from .basis import SectionBasis, build_basis, eval_density, log_bergman_modulus
from .quadrature import (
    QuadratureRule,
    build_quadrature,
    default_resolution,
    default_truncation,
)
from .toeplitz import (
    SpectralData,
    ToeplitzMatrix,
    ToeplitzMode,
    boundary_modes,
    build_toeplitz,
    diagonalize,
    eigensection_masses,
    eigensection_values,
    propagator_kernel,
    propagator_matrix,
    quantize,
)
