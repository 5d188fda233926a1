from .checks import (
    DecayFit,
    energy_localization_check,
    intro_example_errors,
    localization_predicted,
    offdiag_decay_fit,
    short_time_gaussian_check,
    short_time_gaussian_table,
    tauberian_gap,
    tauberian_table,
)
from .erf import erf, erf_density
from .profiles import (
    ProfileTable,
    bulk_dichotomy,
    interface_profile,
    interface_target,
    scaling_bridge,
)
from .ratefit import RateFit, rate_fit
