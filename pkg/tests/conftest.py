"""Pytest configuration file."""

import networkx as nx
import pytest
from hypothesis import strategies as st

from bkverify.models.data import UNCOLORED, Coloring
from bkverify.models.graphs import Graph, join, make_complete, make_cycle, make_empty
from bkverify.models.kempe import UPhiState
from bkverify.models.patterns import build_c5_plus


@st.composite
def small_graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    """Hypothesis strategy for arbitrary graphs on at most `max_n` vertices."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(v, w) for v in range(n) for w in range(v + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


@pytest.fixture(scope="module")
def fixture_c5():
    return make_cycle(5)


@pytest.fixture(scope="module")
def fixture_c5_plus():
    return build_c5_plus()


@pytest.fixture(scope="module")
def fixture_k7():
    return make_complete(7)


@pytest.fixture(scope="module")
def fixture_k10():
    return make_complete(10)


@pytest.fixture(scope="module")
def fixture_star():
    """Return the star K1,9 (centre 0)."""
    return join(make_complete(1), make_empty(9))


@pytest.fixture(scope="module")
def fixture_petersen():
    return Graph.from_networkx(nx.petersen_graph())


@pytest.fixture(scope="module")
def fixture_atlas():
    """Return every graph on at most 6 vertices (208 graphs, empty graph excluded)."""
    return [Graph.from_networkx(g) for g in nx.graph_atlas_g()[1:209]]


def make_state(extra_edges=(), extra_colors=()) -> UPhiState:
    """
    A hand-made state: ``u = 0`` sees ``1..9`` (``u_i = i``, ``x = 8``, ``y = 9``).

    Further vertices ``10, 11, ...`` are added with `extra_colors` (0-based), and `extra_edges`
    are added on top of the star.
    """
    n = 10 + len(extra_colors)
    edges = [(0, v) for v in range(1, 10)] + list(extra_edges)
    g = Graph.from_edges(n, edges)
    colors = (UNCOLORED,) + tuple(range(7)) + (7, 7) + tuple(extra_colors)
    phi = Coloring(palette=8, colors=colors)
    return UPhiState(graph=g, u=0, roles=tuple(range(1, 10)), phi=phi)


@pytest.fixture(scope="function")
def fixture_linked_state():
    """
    State where ``u1`` and ``u2`` are joined by the alternating path ``u1 - 10 - 11 - u2``.
    """
    return make_state(extra_edges=[(1, 10), (10, 11), (11, 2)], extra_colors=(1, 0))


@st.composite
def random_states(draw, max_extra: int = 5) -> UPhiState:
    """Hypothesis strategy for states built on `make_state` with random extra structure."""
    k = draw(st.integers(0, max_extra))
    extra_colors = draw(st.lists(st.integers(0, 7), min_size=k, max_size=k))
    colors = (None,) + tuple(range(7)) + (7, 7) + tuple(extra_colors)
    n = len(colors)
    pairs = [(v, w) for v in range(1, n) for w in range(v + 1, n) if colors[v] != colors[w]]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, chosen) if keep]
    return make_state(extra_edges=edges, extra_colors=extra_colors)


@pytest.fixture(scope="function")
def fixture_branching_state():
    """
    State that no single move extends.

    ``[u_7]`` is complete except for ``u1 u2``, and ``x`` sees all of it, so ``u`` sees every
    color, every neighbour of ``u`` except ``y`` misses no color and all Kempe components are
    linked. The only alternating path ``u1 - 10 - 11 - u2`` has internal vertices with missing
    colors.
    """
    inner = [(i, j) for i in range(1, 8) for j in range(i + 1, 8) if (i, j) != (1, 2)]
    to_x = [(i, 8) for i in range(1, 8)]
    path = [(1, 10), (10, 11), (11, 2)]
    return make_state(extra_edges=inner + to_x + path, extra_colors=(1, 0))
