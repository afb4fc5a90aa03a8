"""Corpus-scale verification."""

from bkverify.harness.checks import (
    is_vertex_critical,
    verify_bk,
    verify_brooks,
    verify_graph,
    verify_ratio_bound,
)
from bkverify.harness.sampling import sample_class_members
from bkverify.harness.scan import VerifyOptions, scan_corpus, scan_graphs
from bkverify.harness.search import search_relaxed


__all__ = [
    "verify_graph",
    "verify_brooks",
    "verify_bk",
    "verify_ratio_bound",
    "is_vertex_critical",
    "search_relaxed",
    "sample_class_members",
    "VerifyOptions",
    "scan_corpus",
    "scan_graphs",
]
