"""bkverify: coloring bounds on graphs with forbidden induced subgraphs."""

from bkverify.harness import (
    VerifyOptions,
    is_vertex_critical,
    sample_class_members,
    scan_corpus,
    search_relaxed,
    verify_graph,
)
from bkverify.models import (
    CATALOG,
    ClassSpec,
    Graph,
    build_c5_plus,
    chromatic_number,
    contains_induced,
    find_u_phi,
    is_class_member,
    is_k_colorable,
    max_clique,
    try_extend_to_u,
)
from bkverify.utils import from_graph6, read_graph6_file, to_graph6


__all__ = [
    # Graphs and patterns
    "Graph",
    "CATALOG",
    "ClassSpec",
    "build_c5_plus",
    "contains_induced",
    "is_class_member",
    # Solvers
    "max_clique",
    "is_k_colorable",
    "chromatic_number",
    # Kempe engine
    "find_u_phi",
    "try_extend_to_u",
    # Harness
    "verify_graph",
    "is_vertex_critical",
    "search_relaxed",
    "sample_class_members",
    "VerifyOptions",
    "scan_corpus",
    # I/O
    "from_graph6",
    "to_graph6",
    "read_graph6_file",
]
