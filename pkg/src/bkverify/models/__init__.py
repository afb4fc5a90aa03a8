"""Models subpackage exports."""

from bkverify.models.data import (  # noqa: F401
    CheckResult,
    CliqueCert,
    Coloring,
    ColorProfile,
    EmbeddingWitness,
    ErrorRecord,
    RunSummary,
    Verdict,
    VerificationReport,
)
from bkverify.models.graphs import (
    Graph,
    complement,
    degree_stats,
    induced_subgraph,
    join,
    make_complete,
    make_cycle,
    make_empty,
    make_path,
    union,
)
from bkverify.models.kempe import (
    UPhiState,
    alternating_path,
    color_profile,
    exists_alternating_path,
    find_u_phi,
    iter_u_phi,
    kempe_component,
    kempe_interchange,
    lemma_predicates,
    try_extend_to_u,
)
from bkverify.models.patterns import (
    CATALOG,
    ClassSpec,
    build_c5_plus,
    contains_induced,
    find_hole,
    find_induced_path,
    has_hole,
    has_induced_path,
    is_class_member,
    named_pattern,
)
from bkverify.models.solvers import (
    Deadline,
    SolverTimeout,
    chromatic_number,
    greedy_bound,
    is_k_colorable,
    max_clique,
)


__all__ = [
    # Graph core
    "Graph",
    "make_path",
    "make_cycle",
    "make_complete",
    "make_empty",
    "union",
    "join",
    "complement",
    "induced_subgraph",
    "degree_stats",
    # Patterns
    "CATALOG",
    "ClassSpec",
    "build_c5_plus",
    "named_pattern",
    "contains_induced",
    "find_induced_path",
    "find_hole",
    "has_induced_path",
    "has_hole",
    "is_class_member",
    # Solvers
    "Deadline",
    "SolverTimeout",
    "max_clique",
    "is_k_colorable",
    "chromatic_number",
    "greedy_bound",
    # Kempe engine
    "UPhiState",
    "find_u_phi",
    "iter_u_phi",
    "color_profile",
    "kempe_component",
    "kempe_interchange",
    "exists_alternating_path",
    "alternating_path",
    "try_extend_to_u",
    "lemma_predicates",
    # Data (not exported)
    # "Coloring",
    # "CliqueCert",
    # "ColorProfile",
    # "EmbeddingWitness",
    # "CheckResult",
    # "Verdict",
    # "VerificationReport",
    # "ErrorRecord",
    # "RunSummary",
]
