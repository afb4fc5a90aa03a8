"""Utility functions to summarise a verification run."""

from typing import Iterable

from bkverify.models.data import ErrorRecord, RunSummary, Verdict, VerificationReport


def is_brooks_exceptional(report: VerificationReport) -> bool:
    """
    Whether the graph needs ``Delta + 1`` colors.

    For ``Delta >= 3`` this only happens when a component is complete.

    Parameters
    ----------
    report : VerificationReport

    Returns
    -------
    bool

    """
    return report.chi is not None and report.chi == report.max_degree + 1


def tally(summary: RunSummary, record: VerificationReport | ErrorRecord) -> None:
    """Add one record to a running summary (in place)."""
    summary.total += 1
    if isinstance(record, ErrorRecord):
        summary.errors += 1
        return

    outcome = record.outcome
    if outcome is Verdict.FAIL:
        summary.failed += 1
    elif outcome is Verdict.UNDECIDED:
        summary.undecided += 1
    elif outcome is Verdict.PASS:
        summary.passed += 1
    else:
        summary.skipped += 1

    brooks = record.checks.get("brooks")
    if brooks is not None and brooks.verdict is Verdict.PASS and brooks.tight:
        summary.brooks_tight += 1
        if is_brooks_exceptional(record):
            summary.brooks_tight_exceptional += 1


def summarize(records: Iterable[VerificationReport | ErrorRecord]) -> RunSummary:
    """
    Count the outcomes of a run.

    Parameters
    ----------
    records : Iterable[VerificationReport | ErrorRecord]

    Returns
    -------
    RunSummary

    """
    summary = RunSummary()
    for record in records:
        tally(summary, record)
    return summary


def undecided_rate(summary: RunSummary) -> float:
    decided = summary.total - summary.errors
    if decided == 0:
        return 0.0
    return summary.undecided / decided
