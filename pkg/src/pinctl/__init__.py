"""Pinning-node selection for networks of coupled identical systems.

Connectivity bounds for the pinned Laplacian L + gZ, bound-driven greedy
selection against optimal and heuristic baselines, a stability certificate,
and a secondary voltage control simulator for islanded microgrids.
"""

__version__ = "0.1.0"

from .graph import (
    Graph,
    GraphError,
    LayeredPartition,
    betweenness_centrality,
    closeness_centrality,
    distance_to_set,
    from_edges,
    hop_distances,
    is_connected,
    laplacian,
    layer_partition,
    load_graph,
    random_connected_graph,
)
from .spectral import (
    PinningPlan,
    eigenvalues_sym,
    is_negative_definite,
    lambda_min_pinned,
    pinned_matrix,
)
from .bounds import (
    BoundsReport,
    bounds_report,
    lower_bound,
    pin_count_ceiling,
    single_pin_limit,
    upper_bound_multi,
    upper_bound_single,
)
from .select import (
    SelectionResult,
    baseline_select,
    greedy_select,
    objective_f,
    objective_value,
    optimal_select,
    phi,
    target_select,
)
from .stability import StabilityCertificate, check_stability, design_uniform_gain
from .simulate import (
    SimConfig,
    Trace,
    default_e0,
    estimate_rate,
    relay_window_ok,
    simulate_secondary,
    write_trace_csv,
)
