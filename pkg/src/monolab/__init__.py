"""Exact entanglement measures and monogamy-weight analysis for small states."""

__version__ = "0.1.0"

from .chain import ChainReport, chain_theorem3
from .copies import (
    CopyModel,
    CopyReport,
    copies_min_oracle,
    copies_min_ratio,
    copies_min_w_formula,
    copies_w_formula,
    copy_reports,
)
from .errors import DimensionCapError, DispatchError, InputError, MonolabError
from .linalg import hermitian_eigenvalues, kron, partial_trace, partial_transpose, trace_norm
from .measures import (
    Bipartition,
    MeasureId,
    concurrence_pure,
    concurrence_wootters,
    entanglement,
    measure_eval,
    negativity,
    tangle_mixed_2q,
    tangle_pure,
)
from .monogamy import (
    MonogamyReport,
    Ordering,
    Region,
    alpha_threshold,
    analyze_state,
    ckw_check,
    compare_measures,
    monogamy_weight,
    region_classify,
    weight_c_schmidt,
    weight_tau_schmidt,
)
from .roof import RoofResult, convex_roof
from .states import (
    PureState,
    SchmidtParams,
    haar_random_pure,
    named_state,
    random_schmidt_params,
    schmidt_state,
    state_from_spec,
    tensor_power,
)
