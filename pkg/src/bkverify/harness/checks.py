"""Per-graph bound checks and the verification report."""

import time
import warnings
from functools import cached_property
from typing import Callable, Iterable

from bkverify.models.data import CheckResult, Coloring, Verdict, VerificationReport
from bkverify.models.graphs import DegreeStats, Graph, degree_stats
from bkverify.models.patterns import ClassSpec, is_class_member, validate_embedding
from bkverify.models.solvers import (
    Deadline,
    SolverTimeout,
    chromatic_number,
    greedy_bound,
    is_k_colorable,
    max_clique,
)
from bkverify.settings import DEFAULT_BUDGET_SECS, logger
from bkverify.utils.checkers import check_clique, check_coloring
from bkverify.utils.io.graph6 import graph_id


RATIO_CLASS: tuple[str, ...] = ("P6", "C4")
"""Forbidden family under which the 5/4 ratio bound is checked."""


class GraphFacts:
    """
    Lazily computed quantities of one graph, sharing one deadline.

    Every certificate is re-validated by the independent checkers, and the chain
    ``omega <= chi <= greedy <= Delta + 1`` is asserted once chi is known.
    """

    def __init__(self, g: Graph, deadline: Deadline | None = None):
        if g.n == 0:
            raise ValueError("cannot verify the empty graph")
        self.g = g
        self.deadline = deadline or Deadline(DEFAULT_BUDGET_SECS)

    @cached_property
    def stats(self) -> DegreeStats:
        return degree_stats(self.g)

    @cached_property
    def clique(self) -> tuple[int, tuple[int, ...]]:
        omega, cert = max_clique(self.g, self.deadline)
        check_clique(self.g, cert.vertices, omega)
        return omega, cert.vertices

    @property
    def omega(self) -> int:
        return self.clique[0]

    @cached_property
    def greedy(self) -> Coloring:
        coloring = greedy_bound(self.g)
        check_coloring(self.g, coloring)
        return coloring

    @cached_property
    def chi(self) -> tuple[int, Coloring]:
        k, coloring = chromatic_number(self.g, self.deadline)
        check_coloring(self.g, coloring, max_colors=k)
        if not self.omega <= k <= self.greedy.palette <= self.stats.max_degree + 1:
            raise RuntimeError(
                f"bound chain violated: omega={self.omega}, chi={k}, "
                f"greedy={self.greedy.palette}, Delta={self.stats.max_degree}"
            )
        return k, coloring

    @cached_property
    def critical(self) -> bool:
        k, _ = self.chi
        return is_vertex_critical(self.g, k, self.deadline)


def _facts(target: Graph | GraphFacts) -> GraphFacts:
    return target if isinstance(target, GraphFacts) else GraphFacts(target)


def _against(facts: GraphFacts, bound: int, name: str) -> CheckResult:
    try:
        k, _ = facts.chi
    except SolverTimeout as e:
        return CheckResult(verdict=Verdict.UNDECIDED, bound=bound, detail=str(e))
    verdict = Verdict.PASS if k <= bound else Verdict.FAIL
    return CheckResult(verdict=verdict, bound=bound, tight=k == bound, detail=f"chi={k} {name}")


def verify_brooks(target: Graph | GraphFacts) -> CheckResult:
    """``chi <= max(Delta, omega)`` for ``Delta >= 3``."""
    facts = _facts(target)
    delta = facts.stats.max_degree
    if delta < 3:
        return CheckResult(verdict=Verdict.SKIPPED, detail=f"Delta={delta} < 3")
    try:
        bound = max(delta, facts.omega)
    except SolverTimeout as e:
        return CheckResult(verdict=Verdict.UNDECIDED, detail=str(e))
    return _against(facts, bound, "vs max(Delta, omega)")


def verify_bk(target: Graph | GraphFacts) -> CheckResult:
    """``chi <= max(Delta - 1, omega)`` for ``Delta >= 9``."""
    facts = _facts(target)
    delta = facts.stats.max_degree
    if delta < 9:
        return CheckResult(verdict=Verdict.SKIPPED, detail=f"Delta={delta} < 9")
    try:
        bound = max(delta - 1, facts.omega)
    except SolverTimeout as e:
        return CheckResult(verdict=Verdict.UNDECIDED, detail=str(e))
    return _against(facts, bound, "vs max(Delta - 1, omega)")


def ratio_bound(omega: int) -> int:
    """``ceil(5 * omega / 4)``."""
    return (5 * omega + 3) // 4


def verify_ratio_bound(target: Graph | GraphFacts) -> CheckResult:
    """``chi <= ceil(5 omega / 4)`` for (P6, C4)-free graphs; other graphs are skipped."""
    facts = _facts(target)
    member, witness = is_class_member(facts.g, RATIO_CLASS)
    if not member:
        assert witness is not None
        return CheckResult(verdict=Verdict.SKIPPED, detail=f"contains {witness.pattern}")
    try:
        bound = ratio_bound(facts.omega)
    except SolverTimeout as e:
        return CheckResult(verdict=Verdict.UNDECIDED, detail=str(e))
    return _against(facts, bound, "vs ceil(5 omega / 4)")


def is_vertex_critical(g: Graph, k: int, deadline: Deadline | None = None) -> bool:
    """
    Decide whether `g` is k-vertex-critical.

    True iff ``chi(g) = k`` and ``chi(g - v) = k - 1`` for every vertex ``v``. A critical graph
    must have minimum degree at least ``k - 1``; a violation is warned about, since it can only
    come from a wrong solver answer.

    Raises
    ------
    SolverTimeout

    """
    if g.n == 0:
        return k == 0
    deadline = deadline or Deadline(DEFAULT_BUDGET_SECS)
    chi, _ = chromatic_number(g, deadline)
    if chi != k:
        return False
    # chi(g - v) >= k - 1 always holds, so (k-1)-colorability of every g - v suffices
    for v in range(g.n):
        if is_k_colorable(g.remove_vertex(v), k - 1, deadline) is None:
            return False

    min_degree = degree_stats(g).min_degree
    if min_degree < k - 1:
        message = f"{k}-vertex-critical graph with minimum degree {min_degree} < {k - 1}"
        logger.error(message)
        warnings.warn(message)
    return True


def verify_criticality(target: Graph | GraphFacts) -> CheckResult:
    """Fails only when a graph is found critical but violates the minimum degree bound."""
    facts = _facts(target)
    try:
        k, _ = facts.chi
        critical = facts.critical
    except SolverTimeout as e:
        return CheckResult(verdict=Verdict.UNDECIDED, detail=str(e))
    if not critical:
        return CheckResult(verdict=Verdict.PASS, detail="not critical")
    bound = k - 1
    verdict = Verdict.PASS if facts.stats.min_degree >= bound else Verdict.FAIL
    return CheckResult(
        verdict=verdict,
        bound=bound,
        tight=facts.stats.min_degree == bound,
        detail=f"{k}-vertex-critical, delta={facts.stats.min_degree}",
    )


CHECKS: dict[str, Callable[[GraphFacts], CheckResult]] = {
    "brooks": verify_brooks,
    "bk": verify_bk,
    "ratio": verify_ratio_bound,
    "critical": verify_criticality,
}
DEFAULT_CHECKS: tuple[str, ...] = ("brooks", "bk", "ratio")


def verify_graph(
    g: Graph,
    index: int = 0,
    checks: Iterable[str] = DEFAULT_CHECKS,
    spec: ClassSpec | None = None,
    budget: float | None = None,
) -> VerificationReport:
    """
    Run the requested checks on one graph.

    Parameters
    ----------
    g : Graph
        The graph; the empty graph gets a report with every check skipped.
    index : int, optional
        Position of the graph in its input stream.
    checks : Iterable[str], optional
        Names from `CHECKS`.
    spec : ClassSpec | None, optional
        When given, class membership is decided and recorded with its witness.
    budget : float | None, optional
        Seconds for all exact solves of this graph (default from the settings).

    Returns
    -------
    VerificationReport

    """
    names = list(checks)
    for name in names:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}; known: {', '.join(CHECKS)}")

    if g.n == 0:
        skipped = CheckResult(verdict=Verdict.SKIPPED, detail="empty graph")
        return VerificationReport(
            index=index,
            graph_id=graph_id(g),
            n=0,
            m=0,
            max_degree=0,
            min_degree=0,
            member=None if spec is None else is_class_member(g, spec)[0],
            checks={name: skipped for name in names},
        )

    start = time.perf_counter()
    facts = GraphFacts(g, Deadline(budget if budget is not None else DEFAULT_BUDGET_SECS))

    member, witness = None, None
    if spec is not None:
        member, witness = is_class_member(g, spec)
        if witness is not None:
            pattern = spec.pattern(witness.pattern)
            if not validate_embedding(g, pattern.graph, witness.mapping):
                raise RuntimeError(f"invalid {witness.pattern} witness {witness.mapping}")

    results = {name: CHECKS[name](facts) for name in names}

    omega = clique = chi = coloring = None
    try:
        omega, clique = facts.clique
        k, certificate = facts.chi
        chi, coloring = k, certificate.colors
    except SolverTimeout:
        logger.info("graph %d undecided within the budget", index)

    critical = None
    if "critical" in results and results["critical"].verdict is not Verdict.UNDECIDED:
        critical = facts.critical

    report = VerificationReport(
        index=index,
        graph_id=graph_id(g),
        n=g.n,
        m=g.m,
        max_degree=facts.stats.max_degree,
        min_degree=facts.stats.min_degree,
        omega=omega,
        clique=clique,
        chi=chi,
        coloring=coloring,
        member=member,
        witness=witness,
        critical=critical,
        checks=results,
        elapsed=time.perf_counter() - start,
    )
    if report.outcome is Verdict.FAIL:
        logger.warning("violation on graph %d (%s)", index, report.graph_id)
    return report
