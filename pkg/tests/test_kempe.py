"""Test the Kempe engine."""

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bkverify.models.data import Coloring
from bkverify.models.graphs import Graph, join, make_complete, make_cycle, make_path
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
from bkverify.models.patterns import validate_embedding
from bkverify.models.solvers import OrderPolicy, greedy_bound
from bkverify.utils.checkers import is_proper_coloring

from .conftest import make_state, random_states, small_graphs


def test_find_u_phi_star(fixture_star):
    """The star has a state at its centre with x, y the first two leaves."""
    state = find_u_phi(fixture_star)
    assert state is not None
    assert state.u == 0
    assert (state.x, state.y) == (1, 2)
    assert [state.color(state.u_(i)) for i in range(1, 8)] == list(range(1, 8))
    assert state.color(state.x) == state.color(state.y) == 8
    assert state.color(state.u) is None
    assert state.role_of(state.x) == "x"


def test_find_u_phi_none(fixture_k10, fixture_c5_plus):
    """No state without a degree-9 vertex or without two nonadjacent neighbours."""
    assert find_u_phi(fixture_k10) is None
    assert find_u_phi(fixture_c5_plus) is None
    assert list(iter_u_phi(fixture_k10)) == []


def test_state_validation(fixture_linked_state):
    """Invalid states are rejected."""
    state = fixture_linked_state
    with pytest.raises(ValueError):
        UPhiState(graph=state.graph, u=0, roles=state.roles[::-1], phi=state.phi)
    with pytest.raises(ValueError):
        UPhiState(graph=state.graph, u=10, roles=state.roles, phi=state.phi)
    with pytest.raises(ValueError):
        # 10 and 11 are adjacent
        UPhiState(
            graph=state.graph,
            u=0,
            roles=state.roles,
            phi=state.phi.with_colors({10: 0}),
        )


def test_color_profile():
    """A vertex of degree 8 seeing all 7 other colors repeats exactly one."""
    star = join(make_complete(1), Graph.from_edges(8, []))
    coloring = Coloring(palette=8, colors=(0, 1, 2, 3, 4, 5, 6, 7, 1))
    profile = color_profile(star, coloring, 0)
    assert profile.degree == 8
    assert profile.missing == ()
    assert profile.repeat_colors == (1,)
    assert profile.unique_colors == (2, 3, 4, 5, 6, 7)

    leaf = color_profile(star, coloring, 3)
    assert leaf.missing == (1, 2, 4, 5, 6, 7)


def test_kempe_component():
    cycle = make_cycle(6)
    coloring = Coloring(palette=2, colors=(0, 1, 0, 1, 0, 1))
    assert kempe_component(cycle, coloring, 0, 0, 1) == tuple(range(6))

    path = make_path(3)
    coloring = Coloring(palette=3, colors=(0, 1, 0))
    # no neighbour of vertex 0 has color 2
    assert kempe_component(path, coloring, 0, 0, 2) == (0,)

    with pytest.raises(ValueError):
        kempe_component(path, coloring, 0, 1, 1)
    with pytest.raises(ValueError):
        kempe_component(path, coloring, 1, 0, 2)


def test_kempe_interchange():
    path = make_path(3)
    coloring = Coloring(palette=3, colors=(0, 1, 0))
    component = kempe_component(path, coloring, 1, 1, 2)
    swapped = kempe_interchange(path, coloring, component, 1, 2)
    assert swapped.colors == (0, 2, 0)
    assert is_proper_coloring(path, swapped)
    assert kempe_interchange(path, swapped, component, 1, 2) == coloring

    with pytest.raises(ValueError):
        # vertex 1 has color 1 and lies outside the component
        kempe_interchange(path, coloring, (0,), 0, 1)


def test_alternating_paths(fixture_linked_state):
    state = fixture_linked_state
    assert exists_alternating_path(state, 1, 2)
    assert alternating_path(state, 1, 2) == (1, 10, 11, 2)

    assert not exists_alternating_path(state, 1, 3)
    assert alternating_path(state, 1, 3) is None

    # separated components: swap at u1 and give u color 1
    component = kempe_component(state.graph, state.phi, state.u_(1), 0, 2)
    swapped = kempe_interchange(state.graph, state.phi, component, 0, 2)
    extended = swapped.with_colors({state.u: 0})
    assert is_proper_coloring(state.graph, extended)

    with pytest.raises(ValueError):
        exists_alternating_path(state, 1, 1)


def test_alternating_paths_adjacent():
    state = make_state(extra_edges=[(1, 3)])
    with pytest.raises(ValueError, match="adjacent"):
        exists_alternating_path(state, 1, 3)


def test_try_extend(fixture_star, fixture_linked_state):
    """Both states extend to an 8-coloring of the whole graph."""
    for state in (find_u_phi(fixture_star), fixture_linked_state):
        coloring = try_extend_to_u(state)
        assert coloring is not None
        assert coloring.is_total
        assert is_proper_coloring(state.graph, coloring)
        assert coloring.num_colors <= 8

    with pytest.raises(ValueError):
        try_extend_to_u(fixture_linked_state, depth=-1)


def test_lemma_predicates_star(fixture_star):
    """On the star every u_i misses colors and the neighbourhood is independent."""
    report = lemma_predicates(find_u_phi(fixture_star))
    assert not report.holds
    assert "u_neighbours_no_missing_colors" in report.failed
    assert not report.conditions["near_complete_neighbourhood"]
    assert not report.conditions["xy_cover_at_least_five"]


def test_lemma_predicates_clique_neighbourhood():
    """With [u_7] complete, the near-complete condition holds."""
    clique = [(i, j) for i in range(1, 8) for j in range(i + 1, 8)]
    report = lemma_predicates(make_state(extra_edges=clique))
    assert report.conditions["near_complete_neighbourhood"]
    assert not report.clauses["some_u_i_low_inner_degree"]


def test_try_extend_needs_path_move(fixture_branching_state):
    """Only recoloring the inside of the alternating path frees a color for u."""
    state = fixture_branching_state
    assert not any(state.has_missing_colors(v) for v in state.roles[:8])
    assert state.profile(10).missing

    assert try_extend_to_u(state, depth=0) is None
    coloring = try_extend_to_u(state, depth=1)
    assert coloring is not None
    assert is_proper_coloring(state.graph, coloring)
    assert coloring.num_colors <= 8
    assert coloring[10] != state.phi[10]


@st.composite
def _colored_graphs(draw):
    g = draw(small_graphs(min_n=2, max_n=9))
    greedy = greedy_bound(g, draw(st.sampled_from(list(OrderPolicy))))
    # one spare color so that every vertex has a partner color
    coloring = Coloring(palette=greedy.palette + 1, colors=greedy.colors)
    return g, coloring


@settings(max_examples=80, deadline=None)
@given(_colored_graphs(), st.data())
def test_interchange_properties(colored, data):
    """Interchanges keep the coloring proper and undo themselves."""
    g, coloring = colored
    v = data.draw(st.integers(0, g.n - 1))
    i = coloring[v]
    j = data.draw(st.sampled_from([c for c in range(coloring.palette) if c != i]))

    component = kempe_component(g, coloring, v, i, j)
    swapped = kempe_interchange(g, coloring, component, i, j)
    assert is_proper_coloring(g, swapped)
    assert kempe_interchange(g, swapped, component, i, j) == coloring
    # the swapped component is still a component, with the same vertices
    assert kempe_component(g, swapped, v, i, j) == component


@settings(max_examples=60, deadline=None)
@given(_colored_graphs())
def test_components_partition_color_classes(colored):
    g, coloring = colored
    for i in range(coloring.palette):
        for j in range(i + 1, coloring.palette):
            pool = {v for v in range(g.n) if coloring[v] in (i, j)}
            components = {kempe_component(g, coloring, v, i, j) for v in pool}
            covered = [v for component in components for v in component]
            assert len(covered) == len(set(covered))
            assert set(covered) == pool


@settings(max_examples=60, deadline=None)
@given(random_states())
def test_alternating_paths_match_reachability(state):
    """Alternating paths are symmetric and agree with reachability in the two color classes."""
    nxg = state.graph.to_networkx()
    for i in range(1, 8):
        for j in range(i + 1, 8):
            a, b = state.u_(i), state.u_(j)
            if state.graph.has_edge(a, b):
                continue
            pool = [v for v in range(state.graph.n) if state.phi[v] in (i - 1, j - 1)]
            expected = nx.has_path(nxg.subgraph(pool), a, b)
            assert exists_alternating_path(state, i, j) == expected
            assert exists_alternating_path(state, j, i) == expected

            path = alternating_path(state, i, j)
            assert (path is not None) == expected
            if path is not None:
                assert validate_embedding(state.graph, make_path(len(path)), path)


@settings(max_examples=60, deadline=None)
@given(random_states())
def test_predicate_counts_against_set_intersections(state):
    nxg = state.graph.to_networkx()
    inner = set(state.roles[:7])
    report = lemma_predicates(state)

    degrees = tuple(len(set(nxg[state.u_(i)]) & inner) for i in range(1, 8))
    assert report.inner_degrees == degrees

    common = {}
    for i in range(1, 8):
        for j in range(i + 1, 8):
            a, b = state.u_(i), state.u_(j)
            if not nxg.has_edge(a, b):
                common[f"u{i}u{j}"] = len(set(nxg[a]) & set(nxg[b]) & inner)
    assert report.common_inner == common
    assert report.clauses["sparse_common_neighbourhoods"] == all(c <= 2 for c in common.values())

    cover = len((set(nxg[state.x]) | set(nxg[state.y])) & inner)
    assert report.xy_cover == cover
    assert report.conditions["xy_cover_at_least_five"] == (cover >= 5)
    assert report.conditions["near_complete_neighbourhood"] == all(d >= 4 for d in degrees)
    assert report.clauses["some_u_i_low_inner_degree"] == (min(degrees) <= 3)


@settings(max_examples=40, deadline=None)
@given(random_states())
def test_try_extend_is_sound(state):
    coloring = try_extend_to_u(state, depth=2)
    if coloring is not None:
        assert coloring.is_total
        assert is_proper_coloring(state.graph, coloring)
        assert coloring.num_colors <= 8
