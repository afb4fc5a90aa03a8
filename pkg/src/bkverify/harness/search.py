"""Search for relaxed graphs: minimal counterexamples with maximum degree 9.

Every class member passes a sequence of filters, cheapest first. A graph dropped by a filter
cannot be a relaxed graph; a random share of the drops is re-checked without the filters.
"""

from typing import Iterable

import numpy as np
from pydantic import BaseModel, Field

from bkverify.models.data import Verdict, VerificationReport
from bkverify.models.graphs import Graph, degree_stats
from bkverify.models.kempe import LemmaReport, iter_u_phi, lemma_predicates, try_extend_to_u
from bkverify.models.patterns import ClassSpec, is_class_member
from bkverify.models.solvers import Deadline, SolverTimeout, is_k_colorable, max_clique
from bkverify.settings import DEFAULT_BUDGET_SECS, logger
from bkverify.settings.consts import DEFAULT_AUDIT_RATE
from bkverify.utils.io.graph6 import graph_id

from .checks import GraphFacts, is_vertex_critical, verify_graph


RELAXED_DEGREE: int = 9

STAGES: tuple[str, ...] = (
    "not_member",
    "max_degree",
    "degree_range",
    "clique",
    "colorable",
    "not_critical",
    "no_state",
)
"""Filter stages in application order; lemma failures are recorded as ``lemma:<clause>``."""

AUDITED_STAGES = frozenset({"max_degree", "degree_range", "clique", "colorable"})


class RelaxedCandidate(BaseModel):
    """
    A graph that survived every filter.

    Attributes
    ----------
    states: list[LemmaReport]
        The predicates evaluated on each state of the graph.
    report: VerificationReport
        Unfiltered re-verification, with the clique and the optimal coloring.

    """

    index: int
    graph_id: str
    states: list[LemmaReport]
    report: VerificationReport

    @property
    def reverified(self) -> Verdict:
        return self.report.outcome


class RelaxedSearchReport(BaseModel):
    """
    Outcome of a relaxed-graph search.

    Every examined graph is counted in exactly one of `dropped`, `candidates` or `undecided`.
    """

    examined: int = 0
    dropped: dict[str, int] = Field(default_factory=dict)
    candidates: list[RelaxedCandidate] = Field(default_factory=list)
    undecided: list[int] = Field(default_factory=list)
    audited: int = 0
    audit_undecided: int = 0
    audit_failures: list[VerificationReport] = Field(default_factory=list)
    counterexamples: list[VerificationReport] = Field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.candidates or self.audit_failures or self.counterexamples)


def is_relaxed_counterexample(g: Graph, deadline: Deadline | None = None) -> bool:
    """
    Unfiltered check: maximum degree 9 and ``chi > max(8, omega)``.

    Raises
    ------
    SolverTimeout

    """
    if g.n == 0 or degree_stats(g).max_degree != RELAXED_DEGREE:
        return False
    facts = GraphFacts(g, deadline)
    k, _ = facts.chi
    return k > max(RELAXED_DEGREE - 1, facts.omega)


def _certify(g: Graph, index: int, seconds: float) -> VerificationReport:
    """Unfiltered report carrying the clique and the optimal coloring of `g`."""
    return verify_graph(g, index, checks=("bk", "critical"), budget=seconds)


def _filter(g: Graph, spec: ClassSpec, deadline: Deadline) -> tuple[str | None, list[LemmaReport]]:
    """Return the stage dropping `g` (None for survivors) and the lemma reports evaluated."""
    if not is_class_member(g, spec)[0]:
        return "not_member", []

    stats = degree_stats(g)
    if stats.max_degree != RELAXED_DEGREE:
        return "max_degree", []
    if any(d not in (RELAXED_DEGREE - 1, RELAXED_DEGREE) for d in stats.sequence):
        return "degree_range", []

    omega, _ = max_clique(g, deadline)
    if omega > RELAXED_DEGREE - 1:
        return "clique", []
    if is_k_colorable(g, RELAXED_DEGREE - 1, deadline) is not None:
        return "colorable", []
    if not is_vertex_critical(g, RELAXED_DEGREE, deadline):
        return "not_critical", []

    reports: list[LemmaReport] = []
    for state in iter_u_phi(g, deadline):
        if try_extend_to_u(state) is not None:
            raise RuntimeError(f"8-coloring extended at u={state.u} although chi = 9")
        report = lemma_predicates(state)
        reports.append(report)
        if not report.holds:
            return f"lemma:{report.failed[0]}", reports
    if not reports:
        return "no_state", []
    return None, reports


def search_relaxed(
    corpus: Iterable[Graph],
    spec: ClassSpec,
    budget: float | None = None,
    audit_rate: float = DEFAULT_AUDIT_RATE,
    seed: int | None = None,
) -> RelaxedSearchReport:
    """
    Filter a corpus down to relaxed-graph candidates.

    Parameters
    ----------
    corpus : Iterable[Graph]
    spec : ClassSpec
        Only members of this class are considered.
    budget : float | None, optional
        Seconds per graph for all exact solves (default from the settings).
    audit_rate : float, optional
        Share of graphs dropped by a cheap filter that are re-checked without filters.
    seed : int | None, optional
        Seed of the audit sampler.

    Returns
    -------
    RelaxedSearchReport
        Expected to hold no candidates.

    """
    if not 0.0 <= audit_rate <= 1.0:
        raise ValueError("audit rate must lie in [0, 1]")
    seconds = budget if budget is not None else DEFAULT_BUDGET_SECS
    rng = np.random.default_rng(seed)
    report = RelaxedSearchReport()

    for index, g in enumerate(corpus):
        report.examined += 1
        try:
            stage, states = _filter(g, spec, Deadline(seconds))
        except SolverTimeout:
            logger.info("graph %d undecided in the relaxed search", index)
            report.undecided.append(index)
            continue

        if stage is None:
            certified = _certify(g, index, seconds)
            logger.warning(
                "relaxed candidate at index %d (re-verification: %s)", index, certified.outcome
            )
            report.candidates.append(
                RelaxedCandidate(
                    index=index, graph_id=graph_id(g), states=states, report=certified
                )
            )
            continue

        report.dropped[stage] = report.dropped.get(stage, 0) + 1
        logger.debug("graph %d dropped at %s", index, stage)
        if stage not in AUDITED_STAGES | {"not_member"}:
            # past the colorability filter: chi = 9 > max(8, omega)
            logger.error("graph %d violates the bound (dropped at %s)", index, stage)
            report.counterexamples.append(_certify(g, index, seconds))

        if stage in AUDITED_STAGES and rng.random() < audit_rate:
            report.audited += 1
            try:
                if is_relaxed_counterexample(g, Deadline(seconds)):
                    logger.error("audit failure: graph %d dropped at %s", index, stage)
                    report.audit_failures.append(_certify(g, index, seconds))
            except SolverTimeout:
                report.audit_undecided += 1

    return report
