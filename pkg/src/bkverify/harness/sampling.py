"""Random members of a hereditary class, grown one vertex at a time."""

import warnings
from typing import Iterator

import numpy as np

from bkverify.models.graphs import Graph, iter_bits, mask_of
from bkverify.models.patterns import ClassSpec, ForbiddenPattern, is_class_member
from bkverify.settings import logger
from bkverify.settings.consts import (
    SAMPLER_EDGE_DENSITY,
    SAMPLER_GRAPH_ATTEMPTS,
    SAMPLER_TWIN_BIAS,
    SAMPLER_VERTEX_ATTEMPTS,
)


MAX_SAMPLE_VERTICES: int = 64

HUB: int = 0
"""Vertex pushed towards the target maximum degree."""


def _propose(
    rng: np.random.Generator,
    adj: list[int],
    v: int,
    target_delta: int | None,
) -> int:
    """Neighbour mask for the new vertex `v`."""
    if v > 0 and rng.random() < SAMPLER_TWIN_BIAS:
        # copy a closed neighbourhood (true twin)
        w = int(rng.integers(v))
        nbrs = adj[w] | 1 << w
    else:
        draws = rng.random(v) < SAMPLER_EDGE_DENSITY
        nbrs = mask_of(int(w) for w in np.flatnonzero(draws))

    if target_delta is not None:
        if adj[HUB].bit_count() < target_delta:
            nbrs |= 1 << HUB
        saturated = mask_of(w for w in range(v) if adj[w].bit_count() >= target_delta)
        nbrs &= ~saturated
        excess = nbrs.bit_count() - target_delta
        if excess > 0:
            drop = rng.choice(list(iter_bits(nbrs)), size=excess, replace=False)
            nbrs &= ~mask_of(int(w) for w in drop)
    return nbrs


def _touches_pattern(g: Graph, v: int, patterns: list[ForbiddenPattern]) -> bool:
    return any(p.find_at(g, v) is not None for p in patterns)


def _grow(
    rng: np.random.Generator,
    patterns: list[ForbiddenPattern],
    n: int,
    target_delta: int | None,
) -> Graph | None:
    """Grow one graph on `n` vertices; None when some vertex cannot be placed."""
    adj = [0]
    if _touches_pattern(Graph(1, adj), 0, patterns):
        return None

    for v in range(1, n):
        for _ in range(SAMPLER_VERTEX_ATTEMPTS):
            nbrs = _propose(rng, adj, v, target_delta)
            trial = [a | 1 << v if nbrs >> w & 1 else a for w, a in enumerate(adj)] + [nbrs]
            # NB: the graph before `v` is a member, so only copies using `v` can appear
            if not _touches_pattern(Graph(v + 1, trial), v, patterns):
                adj = trial
                break
        else:
            logger.debug("could not place vertex %d", v)
            return None
    return Graph(n, adj)


def sample_class_members(
    spec: ClassSpec,
    n: int,
    count: int,
    seed: int | None = None,
    target_delta: int | None = None,
) -> Iterator[Graph]:
    """
    Sample members of the class by incremental growth with rejection.

    Every new vertex gets either a random neighbour set or a copy of the closed neighbourhood
    of an earlier vertex; a proposal is rejected when it creates a forbidden pattern through
    the new vertex. With a target maximum degree, vertex 0 is filled up first, degrees are
    capped at the target and finished graphs with a different maximum degree are discarded.

    Parameters
    ----------
    spec : ClassSpec
    n : int
        Number of vertices, ``1 <= n <= 64``.
    count : int
        Number of graphs requested.
    seed : int | None, optional
        Seed of the random generator; a fixed seed gives a fixed stream.
    target_delta : int | None, optional
        Exact maximum degree of every emitted graph.

    Yields
    ------
    Graph
        Members of the class. Fewer than `count` graphs are produced (with a warning) when the
        attempt budget runs out.

    """
    if not 1 <= n <= MAX_SAMPLE_VERTICES:
        raise ValueError(f"number of vertices must lie in 1..{MAX_SAMPLE_VERTICES}")
    if count < 0:
        raise ValueError("count must be non-negative")
    if target_delta is not None and not 0 <= target_delta <= n - 1:
        raise ValueError(f"target maximum degree must lie in 0..{n - 1}")

    rng = np.random.default_rng(seed)
    patterns = spec.resolved()

    produced = 0
    while produced < count:
        for _ in range(SAMPLER_GRAPH_ATTEMPTS):
            g = _grow(rng, patterns, n, target_delta)
            if g is None:
                continue
            if target_delta is not None and max(g.degrees()) != target_delta:
                continue
            if not is_class_member(g, spec)[0]:
                raise RuntimeError("sampled graph contains a forbidden pattern")
            break
        else:
            message = f"sampling budget exhausted after {produced} of {count} graphs"
            logger.warning(message)
            warnings.warn(message)
            return

        assert g is not None
        produced += 1
        yield g
