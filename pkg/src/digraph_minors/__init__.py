"""Directed minors of semi-complete digraphs: path-decompositions, linked
decompositions, exact minor search, and labeled (Q, m, k)-digraph machinery."""

from .core import (
    Digraph,
    DigraphClass,
    ParseError,
    Subdigraph,
    classify,
    contract,
    delete_edge,
    delete_vertex,
    gen_family,
    induced_subdigraph,
    is_induced_path,
    is_semi_complete,
    is_strongly_connected,
    parse_digraph,
    scc_decompose,
    stability_number,
)
from .connectivity import (
    KTriple,
    PathSystem,
    Separation,
    find_k_triple,
    is_k_triple,
    is_separation,
    local_connectivity,
    max_disjoint_paths,
    min_separation,
    minimal_union_paths,
    pairwise_k_connected_set,
    separates,
)
from .pathdecomp import (
    DecompReport,
    LexMeasure,
    LinkedFlags,
    PathDecomposition,
    build_linked,
    exact_pathwidth,
    normalize,
    transform_delete_edge,
    transform_delete_vertex,
    transform_under_contraction,
    verify,
)
from .minor import (
    BudgetExceededError,
    MappingReport,
    MinorMapping,
    canonical_form,
    closure_oracle,
    compose,
    find_minor,
    find_subdigraph_embedding,
    identity_mapping,
    minor_of_triple,
    verify_mapping,
)
from .labeled import (
    DClass,
    LabeledMappingReport,
    QmkDigraph,
    QuasiOrder,
    chain_order,
    classify_qmk,
    decompose_links,
    decompose_windows,
    flag_extension,
    glue_mappings,
    higman_leq,
    lift_nondecomposable,
    make_qmk,
    noncontractible_pair,
    peel_noncontractible,
    restrict_window,
    split_at,
    trivial_order,
    verify_labeled_minor,
    window_vertices,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
