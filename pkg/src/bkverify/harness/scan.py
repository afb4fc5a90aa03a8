"""Parallel verification of a graph stream, merged back in input order."""

from multiprocessing import Pool
from typing import Iterable, Iterator

from pydantic import BaseModel, ConfigDict

from bkverify.models.data import ErrorRecord, VerificationReport
from bkverify.models.graphs import Graph
from bkverify.models.patterns import ClassSpec
from bkverify.utils.io.graph6 import Graph6Error

from .checks import DEFAULT_CHECKS, verify_graph


class VerifyOptions(BaseModel):
    """What to run on every graph of a scan (shipped to the workers)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    checks: tuple[str, ...] = DEFAULT_CHECKS
    spec: ClassSpec | None = None
    budget: float | None = None


Record = VerificationReport | ErrorRecord
_Job = tuple[int, Graph | ErrorRecord, VerifyOptions]


def _verify_job(job: _Job) -> Record:
    index, item, options = job
    if isinstance(item, ErrorRecord):
        return item
    return verify_graph(item, index, options.checks, options.spec, options.budget)


def _jobs(
    items: Iterable[tuple[int | None, Graph | Graph6Error]],
    options: VerifyOptions,
) -> Iterator[_Job]:
    for index, (line, item) in enumerate(items):
        if isinstance(item, Graph6Error):
            # NB: parse errors are turned into records here, exceptions do not pickle cleanly
            yield index, ErrorRecord(index=index, line=line, error=str(item)), options
        else:
            yield index, item, options


def scan_corpus(
    items: Iterable[tuple[int | None, Graph | Graph6Error]],
    options: VerifyOptions | None = None,
    workers: int = 1,
    chunksize: int = 8,
) -> Iterator[Record]:
    """
    Verify every graph of a stream.

    Parameters
    ----------
    items : Iterable[tuple[int | None, Graph | Graph6Error]]
        ``(line_number, graph_or_error)`` pairs as produced by `read_graph6_file`.
    options : VerifyOptions | None, optional
    workers : int, optional
        Number of worker processes; 1 runs in this process.
    chunksize : int, optional
        Graphs handed to a worker at a time.

    Yields
    ------
    VerificationReport | ErrorRecord
        One record per input item, in input order.

    """
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    jobs = _jobs(items, options or VerifyOptions())
    if workers == 1:
        yield from map(_verify_job, jobs)
        return
    with Pool(processes=workers) as pool:
        yield from pool.imap(_verify_job, jobs, chunksize=chunksize)


def scan_graphs(
    graphs: Iterable[Graph],
    options: VerifyOptions | None = None,
    workers: int = 1,
) -> Iterator[Record]:
    """`scan_corpus` over plain graphs (sampled or constructed)."""
    return scan_corpus(((None, g) for g in graphs), options, workers)
