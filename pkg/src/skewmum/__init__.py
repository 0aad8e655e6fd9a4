"""k-nonseparability and entanglement-depth detection with MUMs and skew information."""

__version__ = "0.1.0"

from .collective import (  # noqa: E402
    collective_operator,
    lhs_sum,
    lhs_sum_isotropic,
    verify_prop31,
    verify_prop32,
)
from .criteria import (  # noqa: E402
    CriterionKind,
    CriterionReport,
    certified_depth,
    evaluate_criterion,
    kprod_bound,
    ksep_bound,
)
from .mum import MumSet, build_gell_mann_basis, build_mum_set, default_mum_set, max_positive_t  # noqa: E402
from .skew import SParameter, generalized_mean, skew_information, variance  # noqa: E402
from .states import StateFamily, example37_states, ghz, w_state  # noqa: E402
from .thresholds import network_depth_demo, reproduce_table, threshold_solve  # noqa: E402
