from .heisenberg import (
    IDENTITY,
    LiftedPoint,
    bf_linear_propagator,
    bf_szego_kernel,
    heisenberg_inverse,
    heisenberg_multiply,
)
from .oracle import poisson_ratio_oracle
