"""Independent certificate checkers.

These scan edges and vertex pairs directly and share no code path with the solvers, so that a
certificate produced by a solver can be re-validated before it is reported.
"""

from typing import Sequence

from bkverify.models.data import UNCOLORED, Coloring
from bkverify.models.graphs import Graph


def is_proper_coloring(
    g: Graph,
    coloring: Coloring | Sequence[int],
    palette: int | None = None,
    allow_partial: bool = False,
) -> bool:
    """
    Check that no edge is monochromatic and every color lies in ``0..palette-1``.

    Parameters
    ----------
    g : Graph
    coloring : Coloring | Sequence[int]
    palette : int | None, optional
        Upper bound on the colors; defaults to the palette of `coloring` when it is a `Coloring`.
    allow_partial : bool, optional
        When True, `UNCOLORED` vertices are ignored instead of failing the check.

    Returns
    -------
    bool

    """
    if isinstance(coloring, Coloring):
        palette = coloring.palette if palette is None else palette
        colors = coloring.colors
    else:
        colors = tuple(coloring)

    if len(colors) != g.n:
        return False
    for c in colors:
        if c == UNCOLORED:
            if not allow_partial:
                return False
        elif c < 0 or (palette is not None and c >= palette):
            return False
    for v, w in g.edges():
        if colors[v] != UNCOLORED and colors[v] == colors[w]:
            return False
    return True


def count_colors(coloring: Coloring | Sequence[int]) -> int:
    colors = coloring.colors if isinstance(coloring, Coloring) else coloring
    return len({c for c in colors if c != UNCOLORED})


def is_clique(g: Graph, vertices: Sequence[int]) -> bool:
    """Pairwise adjacency scan; repeated or out-of-range vertices fail."""
    if len(set(vertices)) != len(vertices):
        return False
    if any(not 0 <= v < g.n for v in vertices):
        return False
    return all(
        g.has_edge(vertices[a], vertices[b])
        for a in range(len(vertices))
        for b in range(a + 1, len(vertices))
    )


def check_coloring(g: Graph, coloring: Coloring, max_colors: int | None = None) -> None:
    """
    Raise `RuntimeError` unless `coloring` is a proper total coloring using at most `max_colors`.

    A failure here means a solver produced a wrong certificate.
    """
    if not is_proper_coloring(g, coloring):
        raise RuntimeError("solver returned an improper coloring")
    if max_colors is not None and count_colors(coloring) > max_colors:
        raise RuntimeError(f"solver returned a coloring with more than {max_colors} colors")


def check_clique(g: Graph, vertices: Sequence[int], size: int | None = None) -> None:
    if not is_clique(g, vertices):
        raise RuntimeError("solver returned a vertex set that is not a clique")
    if size is not None and len(vertices) != size:
        raise RuntimeError(f"clique certificate has {len(vertices)} vertices, expected {size}")
