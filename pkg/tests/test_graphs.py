"""Test the graphs module."""

import pickle

import pytest
from hypothesis import given

from bkverify.models.graphs import (
    Graph,
    complement,
    degree_stats,
    induced_subgraph,
    iter_bits,
    join,
    make_complete,
    make_cycle,
    make_empty,
    make_path,
    mask_of,
    union,
)
from bkverify.models.patterns import C5_PLUS_LABELS

from .conftest import small_graphs


def test_constructors():
    """Test the path, cycle and complete graph constructors."""
    c5 = make_cycle(5)
    assert (c5.n, c5.m) == (5, 5)
    assert c5.degrees() == [2] * 5

    k7 = make_complete(7)
    assert (k7.n, k7.m) == (7, 21)

    p6 = make_path(6)
    assert (p6.n, p6.m) == (6, 5)
    assert p6.degrees().count(1) == 2

    assert make_empty(4).m == 0

    with pytest.raises(ValueError):
        make_cycle(2)
    with pytest.raises(ValueError):
        make_path(0)


def test_validation():
    """Test that malformed adjacency is rejected."""
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0])  # asymmetric
    with pytest.raises(ValueError):
        Graph(1, [0b1])  # self-loop
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])

    g = make_cycle(4)
    with pytest.raises(AttributeError):
        g.n = 5


def test_union_join():
    """Test the disjoint union and the join."""
    wheel = join(make_complete(1), make_cycle(5))
    assert (wheel.n, wheel.m) == (6, 10)
    assert wheel.degree(0) == 5

    two_triangles = union(make_complete(3), make_complete(3))
    assert (two_triangles.n, two_triangles.m) == (6, 6)
    assert not any(two_triangles.has_edge(v, w) for v in range(3) for w in range(3, 6))

    assert join(make_complete(2), make_complete(3)) == make_complete(5)


def test_induced_subgraph(fixture_k7, fixture_c5, fixture_c5_plus):
    """Test G[X] on cliques, cycles and C5+."""
    assert induced_subgraph(fixture_k7, [0, 3, 5]) == make_complete(3)
    assert induced_subgraph(fixture_c5, {0, 1, 2}) == make_path(3)

    # bitmask input and duplicates
    assert induced_subgraph(fixture_c5, 0b111) == make_path(3)
    assert induced_subgraph(fixture_c5, [2, 1, 0, 1]) == make_path(3)

    subset = [C5_PLUS_LABELS.index(name) for name in ("v3", "y", "v2", "x", "v1")]
    h = induced_subgraph(fixture_c5_plus, subset)
    assert (h.n, h.m) == (5, 9)
    assert h.labels == ("v1", "v2", "v3", "x", "y")

    with pytest.raises(ValueError):
        induced_subgraph(fixture_c5, [7])


def test_degree_stats(fixture_c5, fixture_c5_plus, fixture_k10):
    """Test maximum and minimum degree."""
    assert degree_stats(fixture_c5)[:2] == (2, 2)
    assert degree_stats(fixture_c5_plus)[:2] == (5, 4)
    assert degree_stats(fixture_k10)[:2] == (9, 9)

    with pytest.raises(ValueError):
        degree_stats(make_empty(0))


def test_remove_vertex(fixture_c5):
    """Removing a vertex of a cycle leaves a path."""
    assert fixture_c5.remove_vertex(2) == make_path(4)


def test_networkx_roundtrip(fixture_petersen):
    g = fixture_petersen
    assert Graph.from_networkx(g.to_networkx()) == g
    assert (g.n, g.m) == (10, 15)


def test_pickle(fixture_c5_plus):
    """Graphs travel to worker processes with their labels."""
    g = pickle.loads(pickle.dumps(fixture_c5_plus))
    assert g == fixture_c5_plus
    assert g.labels == fixture_c5_plus.labels
    assert g.m == 22


@given(small_graphs())
def test_complement_involution(g):
    h = complement(g)
    assert complement(h) == g
    assert g.m + h.m == g.n * (g.n - 1) // 2


@given(small_graphs())
def test_edges_consistent(g):
    """Edges, degrees and neighbour lists describe the same graph."""
    assert len(list(g.edges())) == g.m
    assert sum(g.degrees()) == 2 * g.m
    for v in range(g.n):
        assert list(iter_bits(g.adj[v])) == list(g.neighbors(v))
        assert mask_of(g.neighbors(v)) == g.adj[v]
