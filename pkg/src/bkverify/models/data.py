"""Module defining data containers."""

from enum import Enum

from pydantic import BaseModel, ConfigDict


UNCOLORED: int = -1
"""Marker for an unassigned vertex in a partial coloring."""


class Coloring(BaseModel):
    """
    A (possibly partial) assignment of colors ``0..palette-1`` to vertices.

    Colors are 0-based internally; reports render them 1-based.

    Attributes
    ----------
    palette: int
    colors: tuple[int, ...]
        Color of every vertex, or `UNCOLORED`.

    """

    model_config = ConfigDict(frozen=True)

    palette: int
    colors: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    @property
    def is_total(self) -> bool:
        return UNCOLORED not in self.colors

    @property
    def num_colors(self) -> int:
        """Number of distinct colors actually used."""
        return len({c for c in self.colors if c != UNCOLORED})

    def with_colors(self, updates: dict[int, int]) -> "Coloring":
        colors = list(self.colors)
        for v, c in updates.items():
            colors[v] = c
        return Coloring(palette=self.palette, colors=tuple(colors))

    def one_based(self) -> tuple[int | None, ...]:
        return tuple(None if c == UNCOLORED else c + 1 for c in self.colors)


class CliqueCert(BaseModel):
    """Certificate of a clique: its vertices in ascending order."""

    model_config = ConfigDict(frozen=True)

    vertices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)


class EmbeddingWitness(BaseModel):
    """
    An induced embedding of a pattern into a host.

    Attributes
    ----------
    pattern: str
        Name of the embedded pattern.
    mapping: tuple[int, ...]
        ``mapping[p]`` is the host vertex hosting pattern vertex ``p``.

    """

    model_config = ConfigDict(frozen=True)

    pattern: str
    mapping: tuple[int, ...]


class ColorProfile(BaseModel):
    """
    The colors seen by a vertex in its neighbourhood.

    Attributes
    ----------
    vertex: int
    color: int | None
        The vertex's own color (None when uncolored).
    counts: dict[int, int]
        Multiplicity of every color present in the neighbourhood.
    missing: tuple[int, ...]
        Palette colors, other than its own, that the vertex does not see.

    """

    model_config = ConfigDict(frozen=True)

    vertex: int
    color: int | None
    counts: dict[int, int]
    missing: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.counts.values())

    @property
    def has_missing_colors(self) -> bool:
        return bool(self.missing)

    @property
    def unique_colors(self) -> tuple[int, ...]:
        return tuple(sorted(c for c, k in self.counts.items() if k == 1))

    @property
    def repeat_colors(self) -> tuple[int, ...]:
        return tuple(sorted(c for c, k in self.counts.items() if k > 1))


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    UNDECIDED = "undecided"


class CheckResult(BaseModel):
    """
    Outcome of one check on one graph.

    Attributes
    ----------
    verdict: Verdict
    bound: int | None
        The right-hand side of the inequality that was tested, when applicable.
    tight: bool
        True when the tested quantity meets the bound with equality.
    detail: str

    """

    verdict: Verdict
    bound: int | None = None
    tight: bool = False
    detail: str = ""


class VerificationReport(BaseModel):
    """
    Per-graph outcome record.

    Every `fail` check is reproducible from the certificates stored alongside it (the clique
    proving the lower bound and the coloring proving the upper bound).

    """

    index: int
    graph_id: str
    n: int
    m: int
    max_degree: int
    min_degree: int
    omega: int | None = None
    clique: tuple[int, ...] | None = None
    chi: int | None = None
    coloring: tuple[int, ...] | None = None
    member: bool | None = None
    witness: EmbeddingWitness | None = None
    critical: bool | None = None
    checks: dict[str, CheckResult] = {}
    elapsed: float = 0.0
    palette_base: int = 0

    @property
    def outcome(self) -> Verdict:
        """Single outcome: fail > undecided > pass > skipped."""
        verdicts = {check.verdict for check in self.checks.values()}
        for verdict in (Verdict.FAIL, Verdict.UNDECIDED, Verdict.PASS):
            if verdict in verdicts:
                return verdict
        return Verdict.SKIPPED


class ErrorRecord(BaseModel):
    """A corpus line that could not be turned into a graph."""

    index: int
    line: int | None
    error: str


class RunSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    undecided: int = 0
    errors: int = 0
    brooks_tight: int = 0
    brooks_tight_exceptional: int = 0
    elapsed: float = 0.0

    @property
    def clean(self) -> bool:
        return self.failed == 0 and self.undecided == 0 and self.errors == 0
