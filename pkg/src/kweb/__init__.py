"""Ideal-related K-theory of graph algebras from finite directed multigraphs."""

from .amplified import (
    CanonicalAmplified,
    are_LPA_isomorphic_amplified,
    canonical_form,
    digraph_isomorphic,
)
from .config import Config
from .graph import (
    INF,
    Graph,
    GraphError,
    GraphParseError,
    format_graph,
    induced_subgraph,
    is_amplified,
    parse_graph,
    reachability,
    regular_rows,
    satisfies_condition_K,
    simple_cycle_count_at,
    vertex_matrix,
)
from .invariant import (
    KGroups,
    KWeb,
    Positivity,
    SixTerm,
    Verdict,
    build_kweb,
    compare_kwebs,
    is_positive,
    k_groups_of_pair,
    six_term,
)
from .lattice import IdealLattice, enumerate_lattice, hereditary_closure, saturation
from .moves import amplified_transitive_closure, amplify, move_T, remove_source, transitive_closure_graph

__version__ = "0.1.0"
