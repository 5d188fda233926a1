from .measures import (
    DensityRatio,
    PointMeasure,
    Scaling,
    cdf,
    interval_density_ratio,
    leading_term_I0,
    pair_with_test_function,
    partial_density_ratio,
    smoothed_cdf,
    spectral_measure,
    weighted_partial_density,
)
from .smoothing import (
    KernelKind,
    SmoothingKernel,
    fejer_cumulative,
    fejer_density,
    make_kernel,
)
