"""Exact rational minors of the weighted path matrix of a directed multigraph.

Every edge of the graph carries its own formal weight variable.  The entry
(i, j) of the path matrix is the generating function of all directed walks
from v_i to v_j; any minor of that matrix is a rational function whose
numerator is a signed sum over vertex-disjoint path-plus-cycle flows and
whose denominator is a signed sum over vertex-disjoint cycle collections.
This package computes those polynomials exactly, applies component-wise
cancellation, and verifies the results with independent series, numeric,
and involution-based oracles.
"""

from .poly import (
    KERNEL_BACKEND,
    InexactDivisionError,
    MissingVariableError,
    Monomial,
    Polynomial,
    RationalExpr,
    ZeroDenominatorError,
    monomial,
    monomial_from_edges,
)
from .graph import (
    CanonicalCycle,
    Edge,
    Graph,
    GraphError,
    SourceSinkSpec,
    SpecError,
    Walk,
    WalkError,
    canonical_cycle,
    graph_from_dict,
    graph_to_dict,
    is_self_avoiding,
    parse_graph,
    parse_query,
    vertex_set,
    walk_vertices,
    walk_weight,
)
from .families import (
    CycleCollection,
    CyclicCore,
    EnumerationLimitError,
    Flow,
    PathSystem,
    cycle_collections,
    cyclic_core,
    elementary_cycles,
    flows,
    path_systems,
)
from .formula import (
    CyclicGraphError,
    RationalMinor,
    acyclic_minor,
    component_factors,
    denominator,
    entry,
    leibniz_det,
    minor,
    numerator,
    weighted_adjacency,
)
from .oracles import (
    NumericReport,
    SeriesReport,
    SingularMatrixError,
    TruncatedMatrix,
    contraction_assignment,
    truncated_path_matrix,
    verify_minor_numeric,
    verify_minor_series,
)
from .involution import (
    AuditReport,
    InvolutionCheck,
    InvolutionError,
    InvolutionPair,
    InvolutionTrace,
    cancel_partner,
    cancellation_audit,
    check_involution,
    enumerate_pairs,
    is_flow,
    make_pair,
)

__version__ = "0.1.0"
