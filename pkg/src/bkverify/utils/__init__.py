"""Utility functions."""

from bkverify.utils.checkers import check_clique, check_coloring, is_clique, is_proper_coloring
from bkverify.utils.io import from_graph6, read_graph6_file, to_graph6
from bkverify.utils.stats import summarize, tally


__all__ = [
    "is_proper_coloring",
    "is_clique",
    "check_coloring",
    "check_clique",
    "from_graph6",
    "to_graph6",
    "read_graph6_file",
    "summarize",
    "tally",
]
