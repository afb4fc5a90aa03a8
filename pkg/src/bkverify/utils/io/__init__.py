"""Input/output"""

from bkverify.utils.io.graph6 import (
    Graph6Error,
    from_graph6,
    graph_id,
    read_graph6_file,
    to_graph6,
    write_graph6,
)


__all__ = [
    "Graph6Error",
    "from_graph6",
    "to_graph6",
    "graph_id",
    "read_graph6_file",
    "write_graph6",
]
