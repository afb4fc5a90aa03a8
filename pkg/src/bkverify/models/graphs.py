"""Module defining the immutable simple-graph value type and its combinators."""

from typing import Iterable, Iterator, NamedTuple, Sequence

import networkx as nx


VertexSet = tuple[int, ...]
"""Sorted tuple of vertex indices."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of `mask` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    """Return the bitmask with one bit per vertex index."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """
    A finite simple undirected graph on the vertices ``0..n-1``.

    Adjacency is stored as one integer bitmask per vertex (bit ``w`` of ``adj[v]`` is set iff
    ``vw`` is an edge). Python integers are unbounded, so the same representation serves small
    and large graphs alike.

    Graphs are immutable: every operation that "modifies" a graph returns a new one.

    Attributes
    ----------
    n : int
        Number of vertices.
    adj : tuple[int, ...]
        Neighbour bitmask of every vertex.
    labels : tuple[str, ...] | None
        Optional display names (``v1``, ``x``, ``t2``...) used when reporting.

    """

    __slots__ = ("n", "adj", "labels", "_m")

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None

    def __init__(self, n: int, adj: Sequence[int], labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(adj) != n:
            raise ValueError("expected one adjacency mask per vertex")
        if labels is not None and len(labels) != n:
            raise ValueError("expected one label per vertex")

        full = (1 << n) - 1
        for v, nbrs in enumerate(adj):
            if nbrs & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if nbrs >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in iter_bits(nbrs):
                if not adj[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")

        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else None)
        object.__setattr__(self, "_m", sum(a.bit_count() for a in adj) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __getstate__(self):
        return (self.n, self.adj, self.labels)

    def __setstate__(self, state):
        n, adj, labels = state
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_m", sum(a.bit_count() for a in adj) // 2)

    @property
    def m(self) -> int:
        """Number of edges."""
        return self._m

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> "Graph":
        """
        Build a graph from an edge list.

        Parameters
        ----------
        n : int
            Number of vertices.
        edges : Iterable[tuple[int, int]]
            Pairs of vertex indices; duplicates are merged.
        labels : Sequence[str] | None, optional
            Display names of the vertices.

        Returns
        -------
        Graph

        Raises
        ------
        ValueError
            On self-loops or indices outside ``0..n-1``.

        """
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of bounds for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Convert a networkx graph; vertices are numbered in the graph's node order."""
        index = {node: i for i, node in enumerate(graph.nodes)}
        labels = None
        if any(not isinstance(node, int) for node in graph.nodes):
            labels = [str(node) for node in graph.nodes]
        return cls.from_edges(len(index), ((index[a], index[b]) for a, b in graph.edges), labels)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(v, w)`` with ``v < w``."""
        for v, nbrs in enumerate(self.adj):
            for w in iter_bits(nbrs >> (v + 1)):
                yield v, v + 1 + w

    def has_edge(self, v: int, w: int) -> bool:
        return bool(self.adj[v] >> w & 1)

    def neighbors(self, v: int) -> VertexSet:
        return tuple(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")

    def remove_vertex(self, v: int) -> "Graph":
        """Return ``G - v``; the remaining vertices keep their relative order."""
        self.check_vertex(v)
        return induced_subgraph(self, [w for w in range(self.n) if w != v])


def make_path(k: int) -> Graph:
    """The path P_k, vertices in path order."""
    if k < 1:
        raise ValueError("a path needs at least one vertex")
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def make_cycle(k: int) -> Graph:
    """The cycle C_k, vertices in cycle order."""
    if k < 3:
        raise ValueError("a cycle needs at least three vertices")
    return Graph.from_edges(k, ((i, (i + 1) % k) for i in range(k)))


def make_complete(k: int) -> Graph:
    if k < 1:
        raise ValueError("a complete graph needs at least one vertex")
    full = (1 << k) - 1
    return Graph(k, [full & ~(1 << v) for v in range(k)])


def make_empty(k: int) -> Graph:
    """The edgeless graph (stable set) on `k` vertices."""
    if k < 0:
        raise ValueError("vertex count must be non-negative")
    return Graph(k, [0] * k)


def _concat_labels(g: Graph, h: Graph) -> list[str] | None:
    if g.labels is None and h.labels is None:
        return None
    return [g.label(v) for v in range(g.n)] + [h.label(v) for v in range(h.n)]


def union(g: Graph, h: Graph) -> Graph:
    """
    Disjoint union: the vertices of `h` are shifted to ``g.n..g.n+h.n-1``.
    """
    shift = g.n
    adj = list(g.adj) + [nbrs << shift for nbrs in h.adj]
    return Graph(g.n + h.n, adj, _concat_labels(g, h))


def join(g: Graph, h: Graph) -> Graph:
    """
    Join ``G + H``: the disjoint union plus every edge between `g` and `h`.
    """
    shift = g.n
    g_all = g.all_mask
    h_all = h.all_mask << shift
    adj = [nbrs | h_all for nbrs in g.adj] + [(nbrs << shift) | g_all for nbrs in h.adj]
    return Graph(g.n + h.n, adj, _concat_labels(g, h))


def complement(g: Graph) -> Graph:
    full = g.all_mask
    return Graph(g.n, [full & ~nbrs & ~(1 << v) for v, nbrs in enumerate(g.adj)], g.labels)


def induced_subgraph(g: Graph, vertices: Iterable[int] | int) -> Graph:
    """
    Return ``G[X]``.

    Parameters
    ----------
    g : Graph
        The host graph.
    vertices : Iterable[int] | int
        The set X, either as indices or as a bitmask. Duplicates are ignored.

    Returns
    -------
    Graph
        Vertex ``i`` of the result is the ``i``-th smallest member of X; labels are carried over.

    """
    chosen = list(iter_bits(vertices)) if isinstance(vertices, int) else sorted(set(vertices))
    for v in chosen:
        g.check_vertex(v)

    position = {v: i for i, v in enumerate(chosen)}
    keep = mask_of(chosen)
    adj = [mask_of(position[w] for w in iter_bits(g.adj[v] & keep)) for v in chosen]
    labels = [g.label(v) for v in chosen] if g.labels is not None else None
    return Graph(len(chosen), adj, labels)


class DegreeStats(NamedTuple):
    max_degree: int
    min_degree: int
    sequence: tuple[int, ...]


def degree_stats(g: Graph) -> DegreeStats:
    """
    Maximum degree, minimum degree and the degree sequence (in vertex order).

    Raises
    ------
    ValueError
        If the graph has no vertices.

    """
    if g.n == 0:
        raise ValueError("degree statistics of the empty graph are undefined")
    seq = tuple(g.degrees())
    return DegreeStats(max(seq), min(seq), seq)
