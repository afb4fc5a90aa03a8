"""Module defining the forbidden configurations and induced-subgraph detection."""

import re
from enum import Enum
from pathlib import Path
from typing import Iterator, Sequence

from pydantic import BaseModel, ConfigDict, field_validator

from bkverify.models.data import EmbeddingWitness
from bkverify.models.graphs import (
    Graph,
    complement,
    induced_subgraph,
    iter_bits,
    make_complete,
    make_cycle,
    make_path,
)
from bkverify.utils.io.graph6 import from_graph6, to_graph6


C5_PLUS_LABELS: tuple[str, ...] = ("v1", "v2", "v3", "v4", "v5", "x", "y", "z", "t1", "t2")


def build_c5_plus() -> Graph:
    """
    The 10-vertex configuration C5+.

    An induced cycle ``v1v2v3v4v5v1`` plus a triangle ``xyz`` and an edge ``t1t2`` where ``x`` and
    ``y`` see exactly ``v1, v2, v3`` on the cycle, ``z`` sees exactly ``v2``, ``t1`` sees exactly
    ``v4, v5`` and ``z``, and ``t2`` sees exactly ``v1, v4, v5``.
    """
    idx = {name: i for i, name in enumerate(C5_PLUS_LABELS)}
    pairs = [
        ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v1"),
        ("x", "y"), ("y", "z"), ("x", "z"),
        ("t1", "t2"),
        ("x", "v1"), ("x", "v2"), ("x", "v3"),
        ("y", "v1"), ("y", "v2"), ("y", "v3"),
        ("z", "v2"),
        ("t1", "v4"), ("t1", "v5"), ("t1", "z"),
        ("t2", "v1"), ("t2", "v4"), ("t2", "v5"),
    ]  # fmt: skip
    return Graph.from_edges(
        len(C5_PLUS_LABELS), ((idx[a], idx[b]) for a, b in pairs), C5_PLUS_LABELS
    )


class Tier(str, Enum):
    DERIVED = "derived"
    EXTERNAL_STANDARD = "external-standard"


class CatalogEntry(BaseModel):
    """
    A named small graph.

    Attributes
    ----------
    name: str
    graph: Graph
    tier: Tier
    source: str
        Where the definition comes from.
    subset: tuple[str, ...] | None
        For configurations extracted from C5+, the labels of the inducing vertex set.

    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    graph: Graph
    tier: Tier
    source: str
    subset: tuple[str, ...] | None = None


C5_PLUS_SUBSETS: dict[str, tuple[str, ...]] = {
    "kite+": ("v4", "v5", "t2", "v1", "v2", "z"),
    "flag+": ("x", "y", "v2", "v1", "t2", "v4"),
    "tripod": ("t1", "v4", "v5", "z", "v3", "v1"),
    "crown": ("x", "y", "v1", "z", "v3"),
    "HVN": ("v1", "t2", "v5", "t1", "v4"),
    "K5-e": ("v3", "y", "v2", "x", "v1"),
    "butterfly": ("x", "v1", "t2", "v2", "v5"),
}
"""Vertex sets of C5+ inducing each named configuration."""


def extract_from_c5_plus(subset: Sequence[str]) -> Graph:
    c5_plus = build_c5_plus()
    return induced_subgraph(c5_plus, [C5_PLUS_LABELS.index(label) for label in subset])


def _build_catalog() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry(
            name="c5plus",
            graph=build_c5_plus(),
            tier=Tier.DERIVED,
            source="C5 with a triangle xyz and an edge t1t2 attached as in build_c5_plus",
        )
    ]
    for name, subset in C5_PLUS_SUBSETS.items():
        entries.append(
            CatalogEntry(
                name=name,
                graph=extract_from_c5_plus(subset),
                tier=Tier.DERIVED,
                source=f"subgraph of C5+ induced by {{{', '.join(subset)}}}",
                subset=subset,
            )
        )

    bull = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)])
    gem = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3)] + [(4, v) for v in range(4)])
    diamond = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    entries += [
        CatalogEntry(
            name="diamond",
            graph=diamond,
            tier=Tier.EXTERNAL_STANDARD,
            source="K4 minus one edge",
        ),
        CatalogEntry(
            name="bull",
            graph=bull,
            tier=Tier.EXTERNAL_STANDARD,
            source="triangle with pendant vertices on two distinct triangle vertices",
        ),
        CatalogEntry(
            name="gem",
            graph=gem,
            tier=Tier.EXTERNAL_STANDARD,
            source="P4 joined to K1",
        ),
        CatalogEntry(
            name="house",
            graph=complement(make_path(5)),
            tier=Tier.EXTERNAL_STANDARD,
            source="complement of P5",
        ),
        CatalogEntry(
            name="K7",
            graph=make_complete(7),
            tier=Tier.EXTERNAL_STANDARD,
            source="complete graph on 7 vertices",
        ),
    ]
    return {entry.name: entry for entry in entries}


class PatternCatalog:
    """Named patterns keyed by canonical name (lookups are case-insensitive)."""

    _ALIASES = {"c5+": "c5plus", "k5e": "K5-e", "k5 - e": "K5-e"}

    def __init__(self):
        self._entries = _build_catalog()
        self._folded = {name.casefold(): name for name in self._entries}
        self._folded.update(self._ALIASES)

    def __contains__(self, name: str) -> bool:
        return self.canonical(name) is not None

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self._entries.values())

    def names(self) -> list[str]:
        return list(self._entries)

    def canonical(self, name: str) -> str | None:
        return self._folded.get(name.casefold())

    def get(self, name: str) -> CatalogEntry:
        if (key := self.canonical(name)) is None:
            raise ValueError(f"unknown pattern {name!r}; known: {', '.join(self.names())}")
        return self._entries[key]


CATALOG = PatternCatalog()


def named_pattern(name: str) -> Graph:
    """Return the catalog graph registered under `name`."""
    return CATALOG.get(name).graph


# Induced embeddings


def validate_embedding(host: Graph, pattern: Graph, mapping: Sequence[int]) -> bool:
    """Check that `mapping` is injective and preserves both edges and non-edges."""
    if len(mapping) != pattern.n or len(set(mapping)) != pattern.n:
        return False
    if any(not 0 <= h < host.n for h in mapping):
        return False
    for p in range(pattern.n):
        for q in range(p + 1, pattern.n):
            if pattern.has_edge(p, q) != host.has_edge(mapping[p], mapping[q]):
                return False
    return True


def _search_order(pattern: Graph) -> list[int]:
    """Most-constrained first: highest degree, then most already-ordered neighbours."""
    degrees = pattern.degrees()
    remaining = set(range(pattern.n))
    order: list[int] = []
    ordered_mask = 0
    while remaining:
        v = min(
            remaining,
            key=lambda w: (-(pattern.adj[w] & ordered_mask).bit_count(), -degrees[w], w),
        )
        order.append(v)
        ordered_mask |= 1 << v
        remaining.remove(v)
    return order


def _neighbour_degrees(g: Graph) -> list[list[int]]:
    degrees = g.degrees()
    return [sorted((degrees[w] for w in iter_bits(nbrs)), reverse=True) for nbrs in g.adj]


def _static_candidates(host: Graph, pattern: Graph) -> list[int]:
    """
    For every pattern vertex, the mask of host vertices that can host it.

    A host vertex qualifies if it has at least as many neighbours and non-neighbours as the
    pattern vertex, and its sorted neighbour degrees dominate the pattern's.
    """
    host_deg = host.degrees()
    pat_deg = pattern.degrees()
    host_nd = _neighbour_degrees(host)
    pat_nd = _neighbour_degrees(pattern)

    candidates = []
    for p in range(pattern.n):
        non_deg = pattern.n - 1 - pat_deg[p]
        mask = 0
        for h in range(host.n):
            if host_deg[h] < pat_deg[p] or host.n - 1 - host_deg[h] < non_deg:
                continue
            if any(a > b for a, b in zip(pat_nd[p], host_nd[h])):
                continue
            mask |= 1 << h
        candidates.append(mask)
    return candidates


def iter_induced_embeddings(
    host: Graph,
    pattern: Graph,
    anchor: int | None = None,
    canonical: bool = False,
) -> Iterator[tuple[int, ...]]:
    """
    Yield induced embeddings of `pattern` into `host` as mappings indexed by pattern vertex.

    Parameters
    ----------
    host : Graph
    pattern : Graph
    anchor : int | None, optional
        When given, only embeddings whose image contains this host vertex are produced.
    canonical : bool, optional
        Assign pattern vertices in index order instead of most-constrained first, so that
        embeddings come out in lexicographic order of the mapping tuple.

    Yields
    ------
    tuple[int, ...]
        Embeddings in lexicographic order of the host vertices listed in search order.

    """
    if pattern.n == 0 or pattern.n > host.n:
        return

    order = list(range(pattern.n)) if canonical else _search_order(pattern)
    static = _static_candidates(host, pattern)
    if anchor is not None:
        host.check_vertex(anchor)
        if not any(mask >> anchor & 1 for mask in static):
            return

    # for every position, the earlier pattern vertices and whether they must be adjacent
    constraints = [
        [(q, pattern.has_edge(p, q)) for q in order[:pos]] for pos, p in enumerate(order)
    ]
    anchor_bit = 0 if anchor is None else 1 << anchor
    mapping = [-1] * pattern.n

    def extend(pos: int, used: int) -> Iterator[tuple[int, ...]]:
        if pos == pattern.n:
            if anchor is None or used & anchor_bit:
                yield tuple(mapping)
            return

        p = order[pos]
        cand = static[p] & ~used
        for q, adjacent in constraints[pos]:
            nbrs = host.adj[mapping[q]]
            cand &= nbrs if adjacent else ~nbrs
        if anchor is not None and not used & anchor_bit:
            # the anchor must still fit somewhere among the remaining pattern vertices
            if pattern.n - pos == 1:
                cand &= anchor_bit
        for h in iter_bits(cand):
            mapping[p] = h
            yield from extend(pos + 1, used | (1 << h))
        mapping[p] = -1

    yield from extend(0, 0)


def contains_induced(
    host: Graph,
    pattern: Graph,
    anchor: int | None = None,
    name: str = "pattern",
) -> EmbeddingWitness | None:
    """
    Search for an induced copy of `pattern` in `host`.

    The search is exhaustive, so `None` means `host` is `pattern`-free. Existence is decided by
    the most-constrained-first search; a hit is then replaced by the lexicographically smallest
    mapping tuple, so that e.g. ``contains_induced(g, g)`` is the identity.

    Parameters
    ----------
    host : Graph
    pattern : Graph
        Must have at least one vertex.
    anchor : int | None, optional
        Restrict to embeddings that use this host vertex.
    name : str, optional
        Pattern name recorded in the witness.

    Returns
    -------
    EmbeddingWitness | None

    """
    if pattern.n < 1:
        raise ValueError("pattern must have at least one vertex")
    if next(iter_induced_embeddings(host, pattern, anchor), None) is None:
        return None
    mapping = next(iter_induced_embeddings(host, pattern, anchor, canonical=True))
    return EmbeddingWitness(pattern=name, mapping=mapping)


# Specialized detectors for paths and holes


def _find_induced_walk(g: Graph, k: int, cycle: bool) -> tuple[int, ...] | None:
    """
    Depth-first search over induced paths on `k` vertices.

    A candidate extension ``w`` of a path ending in ``last`` must see exactly ``last`` among the
    path vertices; when `cycle` is set, the closing vertex must additionally see the start and the
    path only uses vertices larger than its start (every hole is found from its smallest vertex).
    """
    path: list[int] = []

    def extend(path_mask: int) -> tuple[int, ...] | None:
        if len(path) == k:
            return tuple(path)
        start, last = path[0], path[-1]
        closing = len(path) + 1 == k
        cand = g.adj[last] & ~path_mask
        if cycle:
            cand &= ~((1 << (start + 1)) - 1)
        for w in iter_bits(cand):
            want = 1 << last
            if cycle and closing:
                want |= 1 << start
            if g.adj[w] & path_mask != want:
                continue
            path.append(w)
            if (found := extend(path_mask | (1 << w))) is not None:
                return found
            path.pop()
        return None

    for s in range(g.n):
        path.append(s)
        found = extend(1 << s)
        path.pop()
        if found is not None:
            return found
    return None


def find_induced_path(g: Graph, k: int) -> tuple[int, ...] | None:
    """Return the lexicographically smallest induced P_k (as a vertex sequence), if any."""
    if k < 2:
        raise ValueError("induced paths need k >= 2")
    if k > g.n:
        return None
    return _find_induced_walk(g, k, cycle=False)


def find_hole(g: Graph, k: int) -> tuple[int, ...] | None:
    """Return the lexicographically smallest induced C_k (in cycle order), if any."""
    if k < 4:
        raise ValueError("holes have length k >= 4")
    if k > g.n:
        return None
    return _find_induced_walk(g, k, cycle=True)


def has_induced_path(g: Graph, k: int) -> bool:
    return find_induced_path(g, k) is not None


def has_hole(g: Graph, k: int) -> bool:
    return find_hole(g, k) is not None


# Hereditary classes


class PatternKind(str, Enum):
    PATH = "path"
    HOLE = "hole"
    GENERIC = "generic"


class ForbiddenPattern(BaseModel):
    """A resolved member of a forbidden family."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    graph: Graph
    kind: PatternKind = PatternKind.GENERIC

    def find(self, host: Graph) -> EmbeddingWitness | None:
        """Witness of an induced copy in `host` (lexicographically smallest)."""
        mapping: tuple[int, ...] | None
        if self.kind is PatternKind.PATH:
            mapping = find_induced_path(host, self.graph.n)
        elif self.kind is PatternKind.HOLE:
            mapping = find_hole(host, self.graph.n)
        else:
            return contains_induced(host, self.graph, name=self.name)
        return None if mapping is None else EmbeddingWitness(pattern=self.name, mapping=mapping)

    def find_at(self, host: Graph, anchor: int) -> EmbeddingWitness | None:
        """Witness of an induced copy in `host` that uses vertex `anchor` (first one found)."""
        mapping = next(iter_induced_embeddings(host, self.graph, anchor=anchor), None)
        return None if mapping is None else EmbeddingWitness(pattern=self.name, mapping=mapping)


_STRUCTURAL = re.compile(r"^([PCK])(\d+)$", re.IGNORECASE)


def resolve_pattern(key: "str | Graph") -> ForbiddenPattern:
    """
    Resolve a catalog key, a structural name (``P6``, ``C4``, ``K7``) or an inline graph.

    Raises
    ------
    ValueError
        On an unknown key.

    """
    if isinstance(key, Graph):
        return ForbiddenPattern(name=f"inline:{to_graph6(key).decode()}", graph=key)

    if (canonical := CATALOG.canonical(key)) is not None:
        return ForbiddenPattern(name=canonical, graph=CATALOG.get(canonical).graph)

    if (match := _STRUCTURAL.match(key.strip())) is None:
        raise ValueError(f"unknown pattern {key!r}; known: {', '.join(CATALOG.names())}")

    family, k = match.group(1).upper(), int(match.group(2))
    name = f"{family}{k}"
    if family == "P":
        kind = PatternKind.PATH if k >= 2 else PatternKind.GENERIC
        return ForbiddenPattern(name=name, graph=make_path(k), kind=kind)
    if family == "C":
        kind = PatternKind.HOLE if k >= 4 else PatternKind.GENERIC
        return ForbiddenPattern(name=name, graph=make_cycle(k), kind=kind)
    return ForbiddenPattern(name=name, graph=make_complete(k))


class ClassSpec(BaseModel):
    """
    A hereditary class given by its forbidden induced subgraphs.

    Attributes
    ----------
    patterns: tuple[str | Graph, ...]
        Catalog keys, structural names or inline graphs, in checking order.

    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    patterns: tuple[str | Graph, ...]

    @field_validator("patterns")
    @classmethod
    def _check_patterns(cls, patterns):
        if not patterns:
            raise ValueError("a class needs at least one forbidden pattern")
        for key in patterns:
            resolve_pattern(key)
        return patterns

    def resolved(self) -> list[ForbiddenPattern]:
        return [resolve_pattern(key) for key in self.patterns]

    def pattern(self, name: str) -> ForbiddenPattern:
        """The resolved pattern a witness names."""
        for pattern in self.resolved():
            if pattern.name == name:
                return pattern
        raise KeyError(name)

    @property
    def label(self) -> str:
        return "(" + ",".join(p.name for p in self.resolved()) + ")-free"

    @classmethod
    def named(cls, key: str) -> "ClassSpec":
        """
        One of ``p6c4``, ``p6c4k7``, ``p6c4c5plus`` or ``custom:<file>``.

        A custom file lists one pattern per line: a catalog key, a structural name or a graph6
        record. Blank lines and ``#`` comments are ignored.
        """
        if key.startswith("custom:"):
            return cls.from_file(key.removeprefix("custom:"))
        if key not in NAMED_CLASSES:
            raise ValueError(f"unknown class {key!r}; known: {', '.join(NAMED_CLASSES)}")
        return cls(patterns=NAMED_CLASSES[key])

    @classmethod
    def from_file(cls, path: str | Path) -> "ClassSpec":
        patterns: list[str | Graph] = []
        for raw in Path(path).read_text().splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                resolve_pattern(line)
                patterns.append(line)
            except ValueError:
                patterns.append(from_graph6(line))
        return cls(patterns=tuple(patterns))


NAMED_CLASSES: dict[str, tuple[str, ...]] = {
    "p6c4": ("P6", "C4"),
    "p6c4k7": ("P6", "C4", "K7"),
    "p6c4c5plus": ("P6", "C4", "c5plus"),
}


def is_class_member(
    g: Graph,
    forbidden: "ClassSpec | Sequence[str | Graph]",
) -> tuple[bool, EmbeddingWitness | None]:
    """
    Decide whether `g` is free of every forbidden pattern.

    Parameters
    ----------
    g : Graph
    forbidden : ClassSpec | Sequence[str | Graph]
        Patterns are checked in order; paths and holes use the specialized detectors.

    Returns
    -------
    tuple[bool, EmbeddingWitness | None]
        ``(True, None)`` for members; otherwise ``(False, witness)`` for the first pattern found.

    """
    patterns = (
        forbidden.resolved()
        if isinstance(forbidden, ClassSpec)
        else [resolve_pattern(key) for key in forbidden]
    )
    for pattern in patterns:
        if (witness := pattern.find(g)) is not None:
            return False, witness
    return True, None
