"""Module defining (u, phi) states, Kempe-chain operations and the recoloring move search.

A state fixes a vertex ``u`` of degree 9 and a proper 8-coloring ``phi`` of ``G - u`` in which
the neighbours ``u1..u7`` of ``u`` get colors 1..7 and the remaining two neighbours ``x, y``
share color 8. State-facing APIs use this 1-based palette; the raw functions taking a
`Coloring` use the 0-based colors of the solvers.
"""

from collections import deque
from itertools import combinations
from typing import Iterator, Sequence

from pydantic import BaseModel, ConfigDict, model_validator

from bkverify.models.data import UNCOLORED, ColorProfile, Coloring
from bkverify.models.graphs import Graph, VertexSet, iter_bits, mask_of
from bkverify.models.solvers import Deadline, is_k_colorable
from bkverify.settings import logger
from bkverify.settings.consts import DEFAULT_EXTENSION_DEPTH
from bkverify.utils.checkers import check_coloring, is_proper_coloring


STATE_DEGREE: int = 9
PALETTE: int = 8
ROLE_NAMES: tuple[str, ...] = ("u1", "u2", "u3", "u4", "u5", "u6", "u7", "x", "y")


# Raw coloring queries (0-based colors)


def color_profile(
    g: Graph,
    coloring: Coloring,
    v: int,
    removed: int | None = None,
) -> ColorProfile:
    """
    The multiset of colors on the neighbours of `v`.

    Parameters
    ----------
    g : Graph
    coloring : Coloring
    v : int
        May be uncolored only when it is the `removed` vertex.
    removed : int | None, optional
        A vertex treated as deleted (``u`` of a state): it is skipped as a neighbour.

    Returns
    -------
    ColorProfile
        Colors are 0-based; ``missing`` lists the palette colors, other than the color of `v`,
        absent from the neighbourhood.

    Raises
    ------
    ValueError
        If `v` or one of its (non-removed) neighbours is uncolored.

    """
    g.check_vertex(v)
    own = coloring[v]
    if own == UNCOLORED and v != removed:
        raise ValueError(f"vertex {v} is uncolored")

    nbrs = g.adj[v]
    if removed is not None:
        nbrs &= ~(1 << removed)
    counts: dict[int, int] = {}
    for w in iter_bits(nbrs):
        c = coloring[w]
        if c == UNCOLORED:
            raise ValueError(f"neighbour {w} of vertex {v} is uncolored")
        counts[c] = counts.get(c, 0) + 1

    missing = tuple(c for c in range(coloring.palette) if c != own and c not in counts)
    return ColorProfile(
        vertex=v,
        color=None if own == UNCOLORED else own,
        counts=counts,
        missing=missing,
    )


def _class_mask(coloring: Coloring, *colors: int) -> int:
    return mask_of(v for v, c in enumerate(coloring.colors) if c in colors)


def kempe_component(g: Graph, coloring: Coloring, v: int, i: int, j: int) -> VertexSet:
    """
    The connected component containing `v` of the subgraph induced by colors `i` and `j`.

    Raises
    ------
    ValueError
        If ``i == j`` or `v` is colored neither `i` nor `j`.

    """
    if i == j:
        raise ValueError("a Kempe component needs two distinct colors")
    g.check_vertex(v)
    if coloring[v] not in (i, j):
        raise ValueError(f"vertex {v} has color {coloring[v]}, expected {i} or {j}")

    allowed = _class_mask(coloring, i, j)
    seen = 1 << v
    frontier = [v]
    while frontier:
        w = frontier.pop()
        fresh = g.adj[w] & allowed & ~seen
        seen |= fresh
        frontier.extend(iter_bits(fresh))
    return tuple(iter_bits(seen))


def _swap(coloring: Coloring, component: Sequence[int], i: int, j: int) -> Coloring:
    return coloring.with_colors({w: j if coloring[w] == i else i for w in component})


def kempe_interchange(
    g: Graph,
    coloring: Coloring,
    component: Sequence[int],
    i: int,
    j: int,
) -> Coloring:
    """
    Swap colors `i` and `j` inside a full Kempe component.

    Raises
    ------
    ValueError
        If a vertex of `component` is not colored `i` or `j`, or an `{i, j}`-colored neighbour
        of the component lies outside it.
    RuntimeError
        If the result is improper or swapping back does not restore the input.

    """
    if i == j:
        raise ValueError("a Kempe interchange needs two distinct colors")
    inside = mask_of(component)
    allowed = _class_mask(coloring, i, j)
    for w in component:
        if coloring[w] not in (i, j):
            raise ValueError(f"vertex {w} of the component is not colored {i} or {j}")
        if g.adj[w] & allowed & ~inside:
            raise ValueError(f"component is not closed: vertex {w} has an outside neighbour")

    swapped = _swap(coloring, component, i, j)
    if not is_proper_coloring(g, swapped, allow_partial=True):
        raise RuntimeError("Kempe interchange produced an improper coloring")
    if _swap(swapped, component, i, j) != coloring:
        raise RuntimeError("Kempe interchange is not an involution")
    return swapped


# States


class UPhiState(BaseModel):
    """
    A degree-9 vertex together with a coloring of the rest of the graph.

    Attributes
    ----------
    graph: Graph
    u: int
    roles: tuple[int, ...]
        The neighbours ``u1, ..., u7, x, y`` of ``u`` in this order.
    phi: Coloring
        0-based 8-coloring with ``phi[u]`` uncolored, ``phi[u_i] = i - 1`` and
        ``phi[x] = phi[y] = 7``.

    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    graph: Graph
    u: int
    roles: tuple[int, ...]
    phi: Coloring

    @model_validator(mode="after")
    def _check_state(self) -> "UPhiState":
        g, u = self.graph, self.u
        g.check_vertex(u)
        if g.degree(u) != STATE_DEGREE:
            raise ValueError(f"vertex {u} has degree {g.degree(u)}, expected {STATE_DEGREE}")
        if len(self.roles) != STATE_DEGREE or mask_of(self.roles) != g.adj[u]:
            raise ValueError("roles must list the neighbours of u exactly once")
        if self.phi.palette != PALETTE or len(self.phi) != g.n:
            raise ValueError(f"phi must be a {PALETTE}-coloring of all {g.n} vertices")
        if self.phi[u] != UNCOLORED:
            raise ValueError("u must be uncolored")
        if any(c == UNCOLORED for v, c in enumerate(self.phi.colors) if v != u):
            raise ValueError("phi must color every vertex except u")
        if not is_proper_coloring(g, self.phi, allow_partial=True):
            raise ValueError("phi is not proper on G - u")
        expected = tuple(range(7)) + (7, 7)
        if tuple(self.phi[v] for v in self.roles) != expected:
            raise ValueError("neighbours of u must be colored 1..7 once and 8 twice")
        return self

    def u_(self, i: int) -> int:
        """The neighbour ``u_i`` (``1 <= i <= 7``)."""
        if not 1 <= i <= 7:
            raise ValueError(f"index {i} outside 1..7")
        return self.roles[i - 1]

    @property
    def x(self) -> int:
        return self.roles[7]

    @property
    def y(self) -> int:
        return self.roles[8]

    @property
    def inner(self) -> int:
        """Bitmask of ``[u_7] = {u1, ..., u7}``."""
        return mask_of(self.roles[:7])

    def color(self, v: int) -> int | None:
        """1-based color of `v` (None for ``u``)."""
        c = self.phi[v]
        return None if c == UNCOLORED else c + 1

    def role_of(self, v: int) -> str | None:
        return ROLE_NAMES[self.roles.index(v)] if v in self.roles else None

    def profile(self, v: int) -> ColorProfile:
        """Color profile of `v` in ``G - u`` with 1-based colors."""
        raw = color_profile(self.graph, self.phi, v, removed=self.u)
        return ColorProfile(
            vertex=v,
            color=None if raw.color is None else raw.color + 1,
            counts={c + 1: k for c, k in raw.counts.items()},
            missing=tuple(c + 1 for c in raw.missing),
        )

    def has_missing_colors(self, v: int) -> bool:
        return color_profile(self.graph, self.phi, v, removed=self.u).has_missing_colors


def _lift(g: Graph, u: int, colors: Sequence[int]) -> tuple[int, ...]:
    """Map a coloring of ``G - u`` back to the vertices of `g`, leaving `u` uncolored."""
    return tuple(colors[:u]) + (UNCOLORED,) + tuple(colors[u:])


def _state_for(g: Graph, u: int, deadline: Deadline | None) -> UPhiState | None:
    """First state at `u`: pairs ``(x, y)`` of nonadjacent neighbours are tried in lex order."""
    h = g.remove_vertex(u)
    nbrs = g.neighbors(u)

    def shifted(v: int) -> int:
        return v if v < u else v - 1

    for x, y in combinations(nbrs, 2):
        if g.has_edge(x, y):
            continue
        inner = tuple(v for v in nbrs if v not in (x, y))
        precolored = {shifted(v): c for c, v in enumerate(inner)}
        precolored[shifted(x)] = precolored[shifted(y)] = 7

        coloring = is_k_colorable(h, PALETTE, deadline, precolored=precolored)
        if coloring is not None:
            phi = Coloring(palette=PALETTE, colors=_lift(g, u, coloring.colors))
            return UPhiState(graph=g, u=u, roles=inner + (x, y), phi=phi)
    return None


def iter_u_phi(g: Graph, deadline: Deadline | None = None) -> Iterator[UPhiState]:
    """
    Yield the first state of every degree-9 vertex that has one, in vertex order.

    Raises
    ------
    SolverTimeout
        When the budget runs out; the caller reports the graph as undecided.

    """
    for u in range(g.n):
        if g.degree(u) != STATE_DEGREE:
            continue
        state = _state_for(g, u, deadline)
        if state is not None:
            yield state
        else:
            logger.debug("no state at vertex %d", u)


def find_u_phi(g: Graph, deadline: Deadline | None = None) -> UPhiState | None:
    """The first state of `g` (lowest degree-9 vertex), or None when no vertex admits one."""
    return next(iter_u_phi(g, deadline), None)


# Alternating paths (1-based neighbour indices)


def _check_pair(state: UPhiState, i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError("indices must differ")
    a, b = state.u_(i), state.u_(j)
    if state.graph.has_edge(a, b):
        raise ValueError(f"u{i} and u{j} are adjacent")
    return a, b


def exists_alternating_path(state: UPhiState, i: int, j: int) -> bool:
    """True iff ``u_i`` and ``u_j`` lie in the same ``(i, j)`` Kempe component."""
    a, b = _check_pair(state, i, j)
    return b in kempe_component(state.graph, state.phi, a, i - 1, j - 1)


def _shortest_path(g: Graph, source: int, target: int, allowed: int) -> tuple[int, ...] | None:
    """BFS path from `source` to `target` through `allowed` (a shortest path is induced)."""
    parent = {source: source}
    queue = deque([source])
    while queue:
        w = queue.popleft()
        if w == target:
            path = [w]
            while path[-1] != source:
                path.append(parent[path[-1]])
            return tuple(reversed(path))
        for z in iter_bits(g.adj[w] & allowed):
            if z not in parent:
                parent[z] = w
                queue.append(z)
    return None


def alternating_path(state: UPhiState, i: int, j: int) -> tuple[int, ...] | None:
    """A shortest (hence induced) ``(i, j)``-colored path from ``u_i`` to ``u_j``, if any."""
    a, b = _check_pair(state, i, j)
    allowed = _class_mask(state.phi, i - 1, j - 1)
    return _shortest_path(state.graph, a, b, allowed)


# Move search


class _Extender:
    """Bounded search over recolorings of ``G - u`` that free a color for ``u``."""

    def __init__(self, state: UPhiState, depth: int):
        self.g = state.graph
        self.u = state.u
        self.depth = depth
        self.visited: set[tuple[int, ...]] = set()

    def _u_classes(self, phi: Coloring) -> list[list[int]]:
        classes: list[list[int]] = [[] for _ in range(PALETTE)]
        for v in iter_bits(self.g.adj[self.u]):
            classes[phi[v]].append(v)
        return classes

    def _missing(self, phi: Coloring, v: int) -> tuple[int, ...]:
        return color_profile(self.g, phi, v, removed=self.u).missing

    def _finish(self, phi: Coloring, c: int) -> Coloring:
        return phi.with_colors({self.u: c})

    def _terminal(self, phi: Coloring) -> Coloring | None:
        classes = self._u_classes(phi)

        # u already misses a color
        for c in range(PALETTE):
            if not classes[c]:
                return self._finish(phi, c)

        # every c-colored neighbour of u has a missing color of its own
        for c in range(PALETTE):
            updates: dict[int, int] = {}
            for v in classes[c]:
                missing = self._missing(phi, v)
                if not missing:
                    break
                updates[v] = missing[0]
            else:
                return self._finish(phi.with_colors(updates), c)

        # Kempe interchange at a unique i-neighbour not linked to any j-neighbour
        for i in range(PALETTE):
            if len(classes[i]) != 1:
                continue
            a = classes[i][0]
            for j in range(PALETTE):
                if j == i:
                    continue
                component = kempe_component(self.g, phi, a, i, j)
                if not any(v in component for v in classes[j]):
                    swapped = kempe_interchange(self.g, phi, component, i, j)
                    return self._finish(swapped, i)
        return None

    def _branches(self, phi: Coloring) -> Iterator[Coloring]:
        """Recolor an internal vertex of an alternating path between two unique neighbours."""
        classes = self._u_classes(phi)
        unique = [c for c in range(PALETTE) if len(classes[c]) == 1]
        for i, j in combinations(unique, 2):
            a, b = classes[i][0], classes[j][0]
            if self.g.has_edge(a, b):
                continue
            path = _shortest_path(self.g, a, b, _class_mask(phi, i, j))
            if path is None:
                continue
            for v in path[1:-1]:
                for c in self._missing(phi, v):
                    yield phi.with_colors({v: c})

    def search(self, phi: Coloring, depth: int) -> Coloring | None:
        self.visited.add(phi.colors)
        if (done := self._terminal(phi)) is not None:
            return done
        if depth == 0:
            return None
        for child in self._branches(phi):
            if child.colors in self.visited:
                continue
            if (done := self.search(child, depth - 1)) is not None:
                return done
        return None


def try_extend_to_u(state: UPhiState, depth: int = DEFAULT_EXTENSION_DEPTH) -> Coloring | None:
    """
    Look for a proper 8-coloring of the whole graph by recoloring moves on the state.

    Terminal moves are tried first at every node: give ``u`` a color it does not see, move
    every neighbour of one color to a missing color of its own, or interchange the Kempe
    component of a unique ``i``-neighbour that contains no ``j``-neighbour. Otherwise an internal
    vertex of an alternating path between two unique neighbours is moved to one of its missing
    colors, up to `depth` times.

    NB: the interchange is tried before the path-vertex move, the reverse of the order in which
    the two moves are usually stated. A path-vertex move is only taken when no terminal move
    applies at the current coloring.

    Returns
    -------
    Coloring | None
        A verified proper coloring of all vertices with at most 8 colors, or None. None is not
        a proof that no such coloring exists.

    Raises
    ------
    RuntimeError
        If a coloring produced by the moves fails the independent check.

    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    extender = _Extender(state, depth)
    result = extender.search(state.phi, depth)
    if result is not None:
        check_coloring(state.graph, result, max_colors=PALETTE)
    logger.debug("extension at u=%d: %s", state.u, "found" if result is not None else "none")
    return result


# Predicates on states


class LemmaReport(BaseModel):
    """
    Literal evaluation of the structural consequences a relaxed graph must satisfy.

    Attributes
    ----------
    clauses: dict[str, bool]
        Necessary conclusions; a False entry rules the state out as coming from a relaxed graph.
    conditions: dict[str, bool]
        Neighbourhood conditions that are reported but not required on their own.
    inner_degrees: tuple[int, ...]
        ``|N(u_i) & [u_7]|`` for ``i = 1..7``.
    common_inner: dict[str, int]
        ``|N(u_i) & N(u_j) & [u_7]|`` keyed ``"u<i>u<j>"`` for nonadjacent pairs ``i < j``.
    xy_cover: int
        ``|(N(x) | N(y)) & [u_7]|``.

    """

    u: int
    clauses: dict[str, bool]
    conditions: dict[str, bool]
    inner_degrees: tuple[int, ...]
    common_inner: dict[str, int]
    xy_cover: int

    @property
    def failed(self) -> list[str]:
        return [name for name, ok in self.clauses.items() if not ok]

    @property
    def holds(self) -> bool:
        return not self.failed


def _nonadjacent_inner_pairs(state: UPhiState) -> Iterator[tuple[int, int]]:
    for i, j in combinations(range(1, 8), 2):
        if not state.graph.has_edge(state.u_(i), state.u_(j)):
            yield i, j


def _saturated_path_exists(state: UPhiState, i: int, j: int, saturated: int) -> bool:
    """An ``(i, j)`` path from ``u_i`` to ``u_j`` whose internal vertices miss no color."""
    a, b = state.u_(i), state.u_(j)
    allowed = _class_mask(state.phi, i - 1, j - 1) & (saturated | 1 << b)
    return _shortest_path(state.graph, a, b, allowed) is not None


def _repeat_bounds_hold(state: UPhiState, v: int) -> bool:
    profile = state.profile(v)
    if profile.has_missing_colors:
        return True
    top = max(profile.counts.values(), default=0)
    if v in state.roles[:7]:
        return top < 3
    if v not in state.roles:
        return len(profile.repeat_colors) < 3 and top < 4
    return True


def lemma_predicates(state: UPhiState) -> LemmaReport:
    """
    Evaluate the necessary conditions on a state.

    Clauses:

    - ``u_neighbours_no_missing_colors``: every ``u_i`` sees all colors other than its own.
    - ``sparse_common_neighbourhoods``: nonadjacent ``u_i, u_j`` have at most two common
      neighbours in ``[u_7]``.
    - ``alternating_paths_exist``: nonadjacent ``u_i, u_j`` are joined by an ``(i, j)`` path
      whose internal vertices have no missing colors.
    - ``repeat_color_bounds``: a vertex without missing colors in ``[u_7]`` has no color three
      times; outside ``N(u)`` it has fewer than three repeat colors and no color four times.
    - ``not_both_neighbourhood_conditions``: the two conditions below do not both hold.
    - ``some_u_i_low_inner_degree``: some ``u_i`` has at most three neighbours in ``[u_7]``
      (a consequence for (P6, C4)-free graphs).

    Conditions:

    - ``near_complete_neighbourhood``: every ``u_i`` is nonadjacent to at most two ``u_k``.
    - ``xy_cover_at_least_five``: ``|(N(x) | N(y)) & [u_7]| >= 5``.

    """
    g, inner = state.graph, state.inner
    u_i = [state.u_(i) for i in range(1, 8)]

    no_missing = all(not state.has_missing_colors(v) for v in u_i)
    pairs = list(_nonadjacent_inner_pairs(state))
    common = {
        f"u{i}u{j}": (g.adj[state.u_(i)] & g.adj[state.u_(j)] & inner).bit_count() for i, j in pairs
    }
    sparse = all(count <= 2 for count in common.values())
    saturated = mask_of(v for v in range(g.n) if v != state.u and not state.has_missing_colors(v))
    paths = all(_saturated_path_exists(state, i, j, saturated) for i, j in pairs)
    repeats = all(_repeat_bounds_hold(state, v) for v in range(g.n) if v != state.u)

    inner_degrees = tuple((g.adj[v] & inner).bit_count() for v in u_i)
    near_complete = all(6 - d <= 2 for d in inner_degrees)
    xy_cover = ((g.adj[state.x] | g.adj[state.y]) & inner).bit_count()

    return LemmaReport(
        u=state.u,
        clauses={
            "u_neighbours_no_missing_colors": no_missing,
            "sparse_common_neighbourhoods": sparse,
            "alternating_paths_exist": paths,
            "repeat_color_bounds": repeats,
            "not_both_neighbourhood_conditions": not (near_complete and xy_cover >= 5),
            "some_u_i_low_inner_degree": min(inner_degrees) <= 3,
        },
        conditions={
            "near_complete_neighbourhood": near_complete,
            "xy_cover_at_least_five": xy_cover >= 5,
        },
        inner_degrees=inner_degrees,
        common_inner=common,
        xy_cover=xy_cover,
    )
