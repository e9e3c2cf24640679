"""Exact solvers and verified bounds for k-tuple total domination.

The package covers general graphs (branch and bound plus an independent
brute-force route), packings and open packings, inequality checks between
the parameters on Cartesian products, and a specialized engine for products
of two complete graphs: coverage arithmetic on 0/1 matrices, component
switching, a closed formula for k = 2, and a constructive builder whose
output always matches the formula.
"""

from .bounds import (
    ALL_BOUND_IDS,
    BoundReport,
    check_degree_lb,
    check_open_packing_sum,
    check_packing_lb,
    check_packing_product,
    check_product_upper,
    check_rook_extremal,
    check_vizing_conjecture,
    check_vizing_like,
    run_bound_sweep,
)
from .domination import (
    DominationResult,
    Infeasible,
    SizeCapExceeded,
    feasible,
    gamma_bnb,
    gamma_bruteforce,
    is_kds,
    is_ktds,
)
from .graphs import (
    Graph,
    GraphParseError,
    cartesian_product,
    complete,
    cycle,
    is_spanning_subgraph,
    parse_graph_expr,
    petersen,
    read_edge_list,
    star_subdivide,
)
from .packing import (
    PackingResult,
    is_open_packing,
    is_packing,
    open_packing_number,
    packing_number,
)
from .rook import (
    ComponentProfile,
    Gamma2Case,
    Gamma2CaseId,
    NoConstructionFound,
    PreconditionViolated,
    ZeroOneMatrix,
    build_min_2tds,
    canonicalize,
    component_graph,
    gamma2_rook_formula,
    gamma_rook_exact,
    gamma_rook_manycols,
    is_ktds_matrix,
    kappa,
    make_A,
    make_B,
    make_C,
    make_J,
    matrix_to_set,
    rook_upper_bound,
    set_to_matrix,
    switch_components,
)

__version__ = "0.1.0"
