"""Overlapping link-community detection by greedy descent of the normalised node cut.

A link community is a connected subgraph whose boundary runs through nodes
rather than links; it is scored by the normalised node cut, the degree-
normalised conductance of its boundary nodes divided by its total internal
degree. Communities are the local minima of that score over the landscape of
connected subgraphs, found by greedy expansion from every link of the graph.
"""

from .datasets import KARATE_EDGE_LIST, builtin_graph, karate_graph
from .errors import (
    DisconnectedGraph,
    EdgeListError,
    EmptyCut,
    EmptyUnion,
    NoFrontier,
    NoLowerCommunity,
    NodeCutError,
    NotAMember,
    NotANeighbor,
    OscillationError,
    ReportError,
    TooLarge,
    WeightedUnsupported,
    ZeroInternalDegree,
)
from .graph import (
    Graph,
    boundary_nodes,
    connected_components,
    edge_list_text,
    induced_links,
    induced_nodes,
    is_connected,
    load_edge_list,
    neighbors_of_set,
)
from .greedy import (
    Community,
    DetectionResult,
    TieBreakPolicy,
    Trajectory,
    best_addition,
    escape_step,
    merge_trajectories,
    prune,
    run_all_seeds,
    run_from_seed,
)
from .hierarchy import (
    OverlapRelation,
    PolyhierarchyDag,
    build_polyhierarchy,
    classify_overlap,
    cover_check,
    dag_to_dot,
)
from .landscape import (
    enumerate_connected_subgraphs,
    exact_local_minima,
    jaccard_distance,
    stability,
    verify_local_minimum,
)
from .linegraph import (
    LineGraph,
    back_projection,
    build_line_graph,
    check_equivalence,
    incidence_matrix,
    normalized_affiliation,
    phi,
)
from .psi import SubgraphState, make_state, psi, sigma_and_k_in

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "load_edge_list",
    "edge_list_text",
    "induced_links",
    "induced_nodes",
    "neighbors_of_set",
    "is_connected",
    "boundary_nodes",
    "connected_components",
    "psi",
    "sigma_and_k_in",
    "SubgraphState",
    "make_state",
    "LineGraph",
    "build_line_graph",
    "incidence_matrix",
    "normalized_affiliation",
    "back_projection",
    "phi",
    "check_equivalence",
    "TieBreakPolicy",
    "Community",
    "Trajectory",
    "DetectionResult",
    "best_addition",
    "prune",
    "escape_step",
    "run_from_seed",
    "run_all_seeds",
    "merge_trajectories",
    "enumerate_connected_subgraphs",
    "exact_local_minima",
    "verify_local_minimum",
    "jaccard_distance",
    "stability",
    "OverlapRelation",
    "PolyhierarchyDag",
    "classify_overlap",
    "cover_check",
    "build_polyhierarchy",
    "dag_to_dot",
    "karate_graph",
    "builtin_graph",
    "KARATE_EDGE_LIST",
    "NodeCutError",
    "EdgeListError",
    "ZeroInternalDegree",
    "NotANeighbor",
    "NotAMember",
    "NoFrontier",
    "DisconnectedGraph",
    "WeightedUnsupported",
    "EmptyCut",
    "TooLarge",
    "EmptyUnion",
    "NoLowerCommunity",
    "OscillationError",
    "ReportError",
]
