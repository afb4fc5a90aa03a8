"""Module defining the exact clique and coloring solvers and the greedy bounds."""

import math
import time
from enum import Enum
from typing import Mapping, Sequence

import networkx as nx

from bkverify.models.data import UNCOLORED, CliqueCert, Coloring
from bkverify.models.graphs import Graph, iter_bits, mask_of
from bkverify.settings import logger


class SolverTimeout(TimeoutError):
    """The wall-clock budget of a solve ran out before an answer was proven."""


class Deadline:
    """
    Wall-clock budget shared by the solves of one instance.

    Parameters
    ----------
    seconds : float | None
        Budget in seconds; None means unlimited.

    """

    _CHECK_EVERY = 256

    def __init__(self, seconds: float | None = None):
        if seconds is not None and seconds <= 0:
            raise ValueError("budget must be positive")
        self.seconds = seconds
        self.expires = math.inf if seconds is None else time.perf_counter() + seconds
        self._ticks = 0

    def check(self) -> None:
        """Raise `SolverTimeout` once the budget is spent (the clock is read every few calls)."""
        self._ticks += 1
        if self._ticks % self._CHECK_EVERY == 0 and time.perf_counter() > self.expires:
            raise SolverTimeout(f"budget of {self.seconds}s exhausted")


_UNLIMITED = None


def _ensure(deadline: Deadline | None) -> Deadline:
    return deadline if deadline is not None else Deadline(_UNLIMITED)


# Maximum clique


def _color_sort(cand: int, adj: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedy coloring of `cand`; returns vertices with the running number of colors used."""
    order: list[int] = []
    bounds: list[int] = []
    color = 0
    remaining = cand
    while remaining:
        color += 1
        q = remaining
        while q:
            low = q & -q
            v = low.bit_length() - 1
            order.append(v)
            bounds.append(color)
            remaining &= ~low
            q &= ~low & ~adj[v]
    return order, bounds


class MaxCliqueSolver:
    """
    Branch and bound for the maximum clique, bounded by greedy coloring of the candidates.

    Attributes
    ----------
    nodes_expanded : int
        Search nodes visited by the last call to `solve`.

    """

    def __init__(self, g: Graph, deadline: Deadline | None = None):
        self.g = g
        self.deadline = _ensure(deadline)
        self.best_size = 0
        self.best_bits = 0
        self.nodes_expanded = 0

    def solve(self) -> tuple[int, int]:
        """Return ``(size, clique_mask)``."""
        self.best_size, self.best_bits = self._greedy_start()
        self.nodes_expanded = 0
        self._expand(0, 0, self.g.all_mask)
        return self.best_size, self.best_bits

    def _greedy_start(self) -> tuple[int, int]:
        """Clique grown from the highest-degree vertex by the best-connected candidates."""
        if self.g.n == 0:
            return 0, 0
        adj = self.g.adj
        degrees = self.g.degrees()
        v = max(range(self.g.n), key=lambda w: (degrees[w], -w))
        clique, cand = 1 << v, adj[v]
        while cand:
            w = max(iter_bits(cand), key=lambda x: ((adj[x] & cand).bit_count(), -x))
            clique |= 1 << w
            cand &= adj[w]
        return clique.bit_count(), clique

    def _expand(self, size: int, clique: int, cand: int) -> None:
        self.deadline.check()
        self.nodes_expanded += 1
        order, bounds = _color_sort(cand, self.g.adj)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= self.best_size:
                return
            v = order[i]
            bit = 1 << v
            new_cand = cand & self.g.adj[v]
            if new_cand:
                self._expand(size + 1, clique | bit, new_cand)
            elif size + 1 > self.best_size:
                self.best_size, self.best_bits = size + 1, clique | bit
            cand &= ~bit


def max_clique(g: Graph, deadline: Deadline | None = None) -> tuple[int, CliqueCert]:
    """
    Exact clique number with a certificate.

    Parameters
    ----------
    g : Graph
        A graph with at least one vertex.
    deadline : Deadline | None, optional

    Returns
    -------
    tuple[int, CliqueCert]

    Raises
    ------
    ValueError
        On the empty graph.
    SolverTimeout
        When the budget runs out.

    """
    if g.n == 0:
        raise ValueError("clique number of the empty graph is undefined")
    solver = MaxCliqueSolver(g, deadline)
    size, bits = solver.solve()
    logger.debug("max clique %d after %d nodes", size, solver.nodes_expanded)
    return size, CliqueCert(vertices=tuple(iter_bits(bits)))


# Exact coloring


class ColoringSearch:
    """
    Backtracking k-colorability search.

    The next vertex is the uncolored one with the most distinct neighbour colors, then the
    highest degree, then the lowest index. A vertex may only open the smallest color not used
    yet, since unused colors are interchangeable.
    """

    def __init__(
        self,
        g: Graph,
        k: int,
        precolored: Mapping[int, int],
        deadline: Deadline | None = None,
    ):
        self.g = g
        self.k = k
        self.deadline = _ensure(deadline)
        self.degrees = g.degrees()
        self.colors = [UNCOLORED] * g.n
        self.classes = [0] * k
        self.nodes_expanded = 0
        for v, c in precolored.items():
            self._assign(v, c)

    def _assign(self, v: int, c: int) -> None:
        self.colors[v] = c
        self.classes[c] |= 1 << v

    def _unassign(self, v: int, c: int) -> None:
        self.colors[v] = UNCOLORED
        self.classes[c] &= ~(1 << v)

    def _blocked(self, v: int) -> int:
        """Bitmask of the colors present on the neighbours of `v`."""
        nbrs = self.g.adj[v]
        return mask_of(c for c in range(self.k) if self.classes[c] & nbrs)

    def solve(self) -> list[int] | None:
        uncolored = mask_of(v for v in range(self.g.n) if self.colors[v] == UNCOLORED)
        used = mask_of(c for c in range(self.k) if self.classes[c])
        if self._search(uncolored, used):
            return list(self.colors)
        return None

    def _search(self, uncolored: int, used: int) -> bool:
        if not uncolored:
            return True
        self.deadline.check()
        self.nodes_expanded += 1

        best_v, best_key, best_blocked = -1, None, 0
        for v in iter_bits(uncolored):
            blocked = self._blocked(v)
            key = (blocked.bit_count(), self.degrees[v], -v)
            if best_key is None or key > best_key:
                best_v, best_key, best_blocked = v, key, blocked

        full = (1 << self.k) - 1
        allowed = full & ~best_blocked
        fresh = full & ~used
        if fresh:
            # only the first unused color is worth trying
            lowest_fresh = fresh & -fresh
            allowed &= used | lowest_fresh
        for c in iter_bits(allowed):
            self._assign(best_v, c)
            if self._search(uncolored & ~(1 << best_v), used | (1 << c)):
                return True
            self._unassign(best_v, c)
        return False


def is_k_colorable(
    g: Graph,
    k: int,
    deadline: Deadline | None = None,
    precolored: Mapping[int, int] | None = None,
    clique: Sequence[int] | None = None,
) -> Coloring | None:
    """
    Decide k-colorability and return a proper k-coloring when one exists.

    Parameters
    ----------
    g : Graph
    k : int
        Palette size, k >= 0.
    deadline : Deadline | None, optional
    precolored : Mapping[int, int] | None, optional
        Fixed colors (0-based) for some vertices; the search extends them.
    clique : Sequence[int] | None, optional
        A known clique used for seeding; computed when neither this nor `precolored` is given.

    Returns
    -------
    Coloring | None
        None proves that no (extension to a) proper k-coloring exists.

    Raises
    ------
    ValueError
        On negative k or an improper / out-of-palette precoloring.
    SolverTimeout

    """
    if k < 0:
        raise ValueError("palette size must be non-negative")
    if g.n == 0:
        return Coloring(palette=k, colors=())
    if k == 0:
        return None

    deadline = _ensure(deadline)
    if precolored:
        for v, c in precolored.items():
            g.check_vertex(v)
            if not 0 <= c < k:
                raise ValueError(f"precolor {c} of vertex {v} outside palette of size {k}")
            for w in iter_bits(g.adj[v]):
                if precolored.get(w) == c:
                    raise ValueError(f"precoloring is improper on edge ({v}, {w})")
        seed = dict(precolored)
    else:
        if clique is None:
            _, cert = max_clique(g, deadline)
            clique = cert.vertices
        if len(clique) > k:
            return None
        # symmetry breaking: the clique gets colors 0..|C|-1
        seed = {v: c for c, v in enumerate(sorted(clique))}

    search = ColoringSearch(g, k, seed, deadline)
    colors = search.solve()
    logger.debug("%d-colorability: %s after %d nodes", k, colors is not None, search.nodes_expanded)
    return None if colors is None else Coloring(palette=k, colors=tuple(colors))


class OrderPolicy(str, Enum):
    INDEX = "index"
    LARGEST_FIRST = "largest_first"
    SMALLEST_LAST = "smallest_last"
    DSATUR = "DSATUR"


def _index_order(graph: nx.Graph, colors: dict) -> list:
    return sorted(graph)


def greedy_bound(g: Graph, order: OrderPolicy | str = OrderPolicy.DSATUR) -> Coloring:
    """
    Greedy coloring under the given vertex order (never more than Delta + 1 colors).

    Returns
    -------
    Coloring
        Proper and total; the palette equals the number of colors used.

    """
    policy = OrderPolicy(order)
    strategy = _index_order if policy is OrderPolicy.INDEX else policy.value
    assignment = nx.coloring.greedy_color(g.to_networkx(), strategy=strategy)
    colors = tuple(assignment[v] for v in range(g.n))
    return Coloring(palette=len(set(colors)), colors=colors)


def chromatic_number(g: Graph, deadline: Deadline | None = None) -> tuple[int, Coloring]:
    """
    Exact chromatic number with a certificate.

    Tries ``k = omega, omega + 1, ...`` with `is_k_colorable` until the greedy upper bound is
    reached; the first success uses exactly k colors.

    Raises
    ------
    ValueError
        On the empty graph.
    SolverTimeout

    """
    if g.n == 0:
        raise ValueError("chromatic number of the empty graph is undefined")
    deadline = _ensure(deadline)
    omega, cert = max_clique(g, deadline)
    upper = greedy_bound(g, OrderPolicy.DSATUR)
    for k in range(omega, upper.palette):
        if (coloring := is_k_colorable(g, k, deadline, clique=cert.vertices)) is not None:
            return k, coloring
    return upper.palette, upper
