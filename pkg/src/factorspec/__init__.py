"""Exact factor-condition deciders, spectral-radius machinery, extremal-graph
constructors, and a matching-based oracle, wired into a verification harness.
"""

from .conditions import (
    CapExceededError,
    ConditionReport,
    DegreeBounds,
    DegreeFunctions,
    anstee_fractional_gf,
    classify_components,
    delta,
    has_all_ab_factors,
    has_all_fractional_ab_factors,
    has_all_gf_factors,
    has_gf_factor,
    lu_all_fractional_gf,
    theta,
)
from .extremal import (
    build_g1,
    build_g2,
    build_hnb,
    build_k1_join_cliques,
    g1_partition,
    g2_partition,
    g12_min_order,
    hnb_partition,
    hnb_witness,
    is_hnb,
    rho_hnb,
    rho_k1_join_cliques,
    threshold_n,
)
from .graph import (
    Graph,
    Graph6Error,
    complete,
    components_excluding,
    degrees_excluding,
    disjoint_union,
    edges_between,
    from_edge_list,
    is_connected,
    join,
    parse_graph6,
    to_graph6,
)
from .harness import (
    MineReport,
    SuiteReport,
    VerifyReport,
    equivalence_suite,
    load_graph6_file,
    mine_extremal,
    report_json,
    stream_graph6,
    worker_count,
)
from .oracle import (
    Matching,
    all_ab_factors_oracle,
    all_fractional_oracle,
    enumerate_admissible,
    has_h_factor,
    perfect_matching,
    perfect_matching_bruteforce,
    tutte_gadget,
)
from .spectral import (
    ConvergenceError,
    QuotientMatrix,
    SpectralResult,
    charpoly_eval_3x3,
    hong_bound,
    leading_eigenvalue,
    quotient_matrix,
    spectral_radius,
)

__version__ = "0.1.0"
