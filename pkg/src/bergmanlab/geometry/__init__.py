from .flows import (
    DT_MAX,
    FieldKind,
    FlowResult,
    contact_lift_rate,
    fields_at,
    flow,
    lifted_flow,
    project_to_level_set,
)
from .hamiltonians import (
    HamiltonianSpec,
    bf_linear,
    bf_radial,
    fs_height,
    fs_skew,
    fs_skew_b,
    linear_combination,
    make_hamiltonian,
    mobius_height,
    registered_hamiltonians,
    square,
)
from .models import (
    BargmannFockModel,
    FubiniStudyModel,
    GeometryModel,
    ModelKind,
    geodesic_distance,
    make_model,
)
