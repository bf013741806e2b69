"""Identifying codes in graphs: exact solving, greedy (X, Y)-codes,
the exceptional-family catalog, and certified triangle-free construction."""

from __future__ import annotations

from .checks import (
    Violation,
    code_neighborhood,
    is_dominating,
    is_identifying,
    is_xy_identifying,
    unseparated_pairs,
    violations,
)
from .construct import (
    BoundReport,
    CaseStep,
    Certificate,
    bound_check,
    construct_near_triangle_free,
    construct_triangle_free,
    min_triangle_deletion_size,
    serialize_certificate,
    triangle_deletion_set,
)
from .errors import (
    BoundMissedError,
    EdgeAdditionError,
    EdgeError,
    GraphFormatError,
    IdCodeError,
    InvalidDeletionSetError,
    NoCycleEdgeError,
    NotConnectedError,
    NotIdentifiableError,
    NotSeparableError,
    NotTriangleFreeError,
    NotYIdentifiableError,
    SearchBudgetError,
    UnknownFamilyError,
    UnsupportedCodeFormError,
    VertexRangeError,
)
from .exact import (
    ExactResult,
    cycle_identifying_code,
    gamma_id_closed_form,
    gamma_id_exact,
    identifying_code_at_most,
    min_identifying_containing,
    min_xy_identifying_exact,
    odd_cycle_plus_chord_code,
    path_identifying_code,
)
from .families import (
    CatalogEntry,
    FamilyId,
    all_family_ids,
    in_f_delta,
    make_family,
    make_standard,
    match_family,
    random_triangle_free,
    star,
    tree_code_all_low_degree,
    tree_plus_edge_code,
)
from .graphs import (
    BoundaryDecomposition,
    Graph,
    boundary_decomposition,
    bridges,
    components,
    delete,
    find_closed_twins,
    find_open_twins,
    graph_hash,
    induced_subgraph,
    is_connected,
    linear_order,
    load_graph,
    parse_graph,
    pick_cycle_edge,
    serialize_graph,
    triangle_witness,
)
from .isomorph import find_isomorphism, is_isomorphic
from .refine import (
    Partition,
    greedy_separating,
    greedy_xy_identifying,
    partition_by_code,
)

__version__ = "0.1.0"

__all__ = [
    "BoundMissedError",
    "BoundReport",
    "BoundaryDecomposition",
    "CaseStep",
    "CatalogEntry",
    "Certificate",
    "EdgeAdditionError",
    "EdgeError",
    "ExactResult",
    "FamilyId",
    "Graph",
    "GraphFormatError",
    "IdCodeError",
    "InvalidDeletionSetError",
    "NoCycleEdgeError",
    "NotConnectedError",
    "NotIdentifiableError",
    "NotSeparableError",
    "NotTriangleFreeError",
    "NotYIdentifiableError",
    "Partition",
    "SearchBudgetError",
    "UnknownFamilyError",
    "UnsupportedCodeFormError",
    "VertexRangeError",
    "Violation",
    "all_family_ids",
    "bound_check",
    "boundary_decomposition",
    "bridges",
    "code_neighborhood",
    "components",
    "construct_near_triangle_free",
    "construct_triangle_free",
    "cycle_identifying_code",
    "delete",
    "find_closed_twins",
    "find_isomorphism",
    "find_open_twins",
    "gamma_id_closed_form",
    "gamma_id_exact",
    "graph_hash",
    "greedy_separating",
    "greedy_xy_identifying",
    "identifying_code_at_most",
    "in_f_delta",
    "induced_subgraph",
    "is_connected",
    "is_dominating",
    "is_identifying",
    "is_isomorphic",
    "is_xy_identifying",
    "linear_order",
    "load_graph",
    "make_family",
    "make_standard",
    "match_family",
    "min_identifying_containing",
    "min_triangle_deletion_size",
    "min_xy_identifying_exact",
    "odd_cycle_plus_chord_code",
    "parse_graph",
    "partition_by_code",
    "path_identifying_code",
    "pick_cycle_edge",
    "random_triangle_free",
    "serialize_certificate",
    "serialize_graph",
    "star",
    "tree_code_all_low_degree",
    "tree_plus_edge_code",
    "triangle_deletion_set",
    "triangle_witness",
    "unseparated_pairs",
    "violations",
]
