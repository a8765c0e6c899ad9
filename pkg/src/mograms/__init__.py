"""Similarity networks for multiobjective solution sets.

Pipeline: design-space similarity -> Pathfinder pruning -> force-directed
layout -> styled SVG/DOT/JSON views, plus an interactive session service.
"""

from .errors import MoGramError
from .layout import LayoutParams, graph_distances, kamada_kawai
from .model import (
    AssignmentPayload,
    BinaryPayload,
    FrontSolution,
    LayoutedMoGram,
    LayoutReport,
    MoGram,
    NoPayload,
    ObjectiveSpec,
    Sense,
    SimilarityMatrix,
    SolutionSet,
    TokenPayload,
    load_solution_set,
    solution_set_from_json,
    solution_set_to_json,
    validate_solution_set,
)
from .pathfinder import (
    PathfinderParams,
    pathfinder_oracle,
    pathfinder_prune,
    to_distance,
)
from .render import emit_dot, emit_svg
from .session import (
    Session,
    create_session,
    exclude_nodes,
    get_view,
    reset,
    set_objective_coloring,
    set_similarity_display_range,
)
from .similarity import (
    MetricChoice,
    build_similarity_matrix,
    load_precomputed_matrix,
    sim_hamming,
    sim_levenshtein,
    sim_line,
    sim_station,
)
from .styling import StyledMoGram, StyleSpec, edge_thickness, sector_alpha, style

__version__ = "0.1.0"

__all__ = [
    "AssignmentPayload",
    "BinaryPayload",
    "FrontSolution",
    "LayoutParams",
    "LayoutReport",
    "LayoutedMoGram",
    "MetricChoice",
    "MoGram",
    "MoGramError",
    "NoPayload",
    "ObjectiveSpec",
    "PathfinderParams",
    "Sense",
    "Session",
    "SimilarityMatrix",
    "SolutionSet",
    "StyleSpec",
    "StyledMoGram",
    "TokenPayload",
    "build_similarity_matrix",
    "create_session",
    "edge_thickness",
    "emit_dot",
    "emit_svg",
    "exclude_nodes",
    "get_view",
    "graph_distances",
    "kamada_kawai",
    "load_precomputed_matrix",
    "load_solution_set",
    "pathfinder_oracle",
    "pathfinder_prune",
    "reset",
    "sector_alpha",
    "set_objective_coloring",
    "set_similarity_display_range",
    "sim_hamming",
    "sim_levenshtein",
    "sim_line",
    "sim_station",
    "solution_set_from_json",
    "solution_set_to_json",
    "style",
    "to_distance",
    "validate_solution_set",
    "__version__",
]
