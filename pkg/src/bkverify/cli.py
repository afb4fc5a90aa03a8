"""Command-line front-end.

Exit codes: 0 for a clean run, 1 when violations, undecided graphs or malformed input were
found, 2 for usage errors.
"""

import argparse
import json
import sys
import time
from typing import Iterable, Iterator, Literal

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from bkverify.harness.checks import CHECKS, DEFAULT_CHECKS
from bkverify.harness.sampling import MAX_SAMPLE_VERTICES, sample_class_members
from bkverify.harness.scan import Record, VerifyOptions, scan_corpus, scan_graphs
from bkverify.harness.search import search_relaxed
from bkverify.models.data import ErrorRecord, RunSummary, Verdict
from bkverify.models.graphs import Graph
from bkverify.models.patterns import (
    CATALOG,
    NAMED_CLASSES,
    ClassSpec,
    is_class_member,
    resolve_pattern,
    validate_embedding,
)
from bkverify.models.solvers import Deadline, SolverTimeout, chromatic_number, max_clique
from bkverify.settings import DEFAULT_BUDGET_SECS, logger
from bkverify.utils.io.graph6 import (
    Graph6Error,
    from_graph6,
    graph_id,
    iter_graph6_lines,
    read_graph6_file,
    to_graph6,
)
from bkverify.utils.stats import tally, undecided_rate


EXIT_CLEAN = 0
EXIT_FOUND = 1
EXIT_USAGE = 2

INPUT_COMMANDS = frozenset({"detect", "color", "clique", "verify"})


class RunConfig(BaseModel):
    """
    Validated options of one invocation; its JSON dump heads every structured output.

    Attributes
    ----------
    command: str
    graph6: str | None
        An inline graph6 record.
    input: tuple[str, ...]
        graph6 files (``.zst`` allowed, ``-`` for stdin).
    named: str | None
        A catalog key or structural name used as the input graph.
    class_name: str
        One of the named classes or ``custom:<file>``.

    """

    command: str
    graph6: str | None = None
    input: tuple[str, ...] = ()
    named: str | None = None
    class_name: str = "p6c4c5plus"
    patterns: tuple[str, ...] = ()
    checks: tuple[str, ...] = DEFAULT_CHECKS
    budget_secs: float = Field(DEFAULT_BUDGET_SECS, gt=0)
    workers: int = Field(1, ge=1)
    seed: int | None = None
    format: Literal["human", "jsonl"] = "human"
    mode: Literal["sample", "relaxed"] = "sample"
    n_min: int = Field(10, ge=1, le=MAX_SAMPLE_VERTICES)
    n_max: int = Field(16, ge=1, le=MAX_SAMPLE_VERTICES)
    count: int = Field(10, ge=0)
    delta: int | None = Field(None, ge=0)
    allow_undecided: bool = False

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        sources = sum([self.graph6 is not None, bool(self.input), self.named is not None])
        needs_input = self.command in INPUT_COMMANDS or (
            self.command == "scan" and self.mode == "relaxed"
        )
        if needs_input and sources != 1:
            raise ValueError("exactly one of --graph6, --input or --named is required")
        if self.n_min > self.n_max:
            raise ValueError("--n range must not be empty")
        for name in self.checks:
            if name not in CHECKS:
                raise ValueError(f"unknown check {name!r}; known: {', '.join(CHECKS)}")
        return self

    def class_spec(self) -> ClassSpec:
        if self.patterns:
            return ClassSpec(patterns=self.patterns)
        return ClassSpec.named(self.class_name)


# Input and output


def _load(config: RunConfig) -> Iterator[tuple[int | None, Graph | Graph6Error]]:
    if config.graph6 is not None:
        try:
            yield None, from_graph6(config.graph6)
        except Graph6Error as e:
            yield None, e
        return
    if config.named is not None:
        yield None, resolve_pattern(config.named).graph
        return
    for path in config.input:
        if path == "-":
            for lineno, record in iter_graph6_lines(sys.stdin.buffer):
                try:
                    yield lineno, from_graph6(record)
                except Graph6Error as e:
                    yield lineno, e.at_line(lineno)
        else:
            yield from read_graph6_file(path)


def _graphs(config: RunConfig) -> Iterator[tuple[int, Graph | ErrorRecord]]:
    for index, (line, item) in enumerate(_load(config)):
        if isinstance(item, Graph6Error):
            yield index, ErrorRecord(index=index, line=line, error=str(item))
        else:
            yield index, item


def _emit(payload: dict) -> None:
    print(json.dumps(payload), flush=True)


def _labelled(g: Graph, vertices: Iterable[int]) -> str:
    return "{" + ", ".join(g.label(v) for v in vertices) + "}"


def _render_coloring(g: Graph, colors: Iterable[int]) -> str:
    # NB: human output is 1-based
    return " ".join(f"{g.label(v)}:{c + 1}" for v, c in enumerate(colors))


def _render_report(record: Record) -> str:
    if isinstance(record, ErrorRecord):
        where = f"line {record.line}" if record.line is not None else "input"
        return f"[{record.index}] error at {where}: {record.error}"
    r = record
    head = (
        f"[{r.index}] {r.graph_id} n={r.n} m={r.m} Delta={r.max_degree} delta={r.min_degree} "
        f"omega={r.omega if r.omega is not None else '?'} "
        f"chi={r.chi if r.chi is not None else 'undecided'} -> {r.outcome.value}"
    )
    lines = [head]
    if r.member is not None:
        member = "member" if r.member else f"not member ({r.witness.pattern if r.witness else ''})"
        lines.append(f"    class: {member}")
    for name, check in r.checks.items():
        bound = f" bound={check.bound}" if check.bound is not None else ""
        tight = " tight" if check.tight else ""
        lines.append(f"    {name}: {check.verdict.value}{bound}{tight} {check.detail}".rstrip())
    if r.coloring is not None and r.outcome is Verdict.FAIL:
        lines.append(f"    clique: {list(r.clique or ())}")
        lines.append(f"    coloring: {' '.join(str(c + 1) for c in r.coloring)}")
    return "\n".join(lines)


def _render_summary(summary: RunSummary) -> str:
    return (
        f"total={summary.total} pass={summary.passed} fail={summary.failed} "
        f"skipped={summary.skipped} undecided={summary.undecided} errors={summary.errors} "
        f"brooks_tight={summary.brooks_tight} "
        f"(complete components: {summary.brooks_tight_exceptional})"
    )


def _exit_code(summary: RunSummary, allow_undecided: bool) -> int:
    if summary.failed or summary.errors:
        return EXIT_FOUND
    if summary.undecided:
        logger.warning("%.1f%% of the graphs were undecided", 100 * undecided_rate(summary))
    if summary.undecided and not allow_undecided:
        return EXIT_FOUND
    return EXIT_CLEAN


def _stream(config: RunConfig, records: Iterable[Record]) -> int:
    if config.format == "jsonl":
        _emit({"config": config.model_dump(mode="json")})
    else:
        print(f"# config: {config.model_dump_json()}")

    start = time.perf_counter()
    summary = RunSummary()
    for record in records:
        tally(summary, record)
        if config.format == "jsonl":
            print(record.model_dump_json(), flush=True)
        else:
            print(_render_report(record), flush=True)

    summary.elapsed = time.perf_counter() - start
    if config.format == "jsonl":
        _emit({"summary": summary.model_dump(mode="json")})
    else:
        print(_render_summary(summary))
    return _exit_code(summary, config.allow_undecided)


# Commands


def cmd_pattern(args: argparse.Namespace) -> int:
    try:
        entry = CATALOG.get(args.name)
    except ValueError:
        known = ", ".join(CATALOG.names())
        print(f"unknown pattern {args.name!r}; known: {known}", file=sys.stderr)
        return EXIT_USAGE
    g = entry.graph
    edges = [(g.label(v), g.label(w)) for v, w in g.edges()]
    if args.format == "jsonl":
        _emit(
            {
                "name": entry.name,
                "tier": entry.tier.value,
                "n": g.n,
                "m": g.m,
                "graph6": to_graph6(g).decode("ascii"),
                "edges": edges,
            }
        )
        return EXIT_CLEAN
    print(f"{entry.name} ({entry.tier.value}): n={g.n} m={g.m}")
    print(to_graph6(g).decode("ascii"))
    for a, b in edges:
        print(f"{a} - {b}")
    return EXIT_CLEAN


def cmd_detect(config: RunConfig) -> int:
    spec = config.class_spec()
    code = EXIT_CLEAN
    for index, item in _graphs(config):
        if isinstance(item, ErrorRecord):
            print(_render_report(item), file=sys.stderr)
            code = EXIT_FOUND
            continue
        member, witness = is_class_member(item, spec)
        if witness is not None and not validate_embedding(
            item, spec.pattern(witness.pattern).graph, witness.mapping
        ):
            raise RuntimeError(f"invalid {witness.pattern} witness {witness.mapping}")
        if config.format == "jsonl":
            _emit(
                {
                    "index": index,
                    "graph_id": graph_id(item),
                    "class": spec.label,
                    "member": member,
                    "witness": None if witness is None else witness.model_dump(),
                }
            )
        elif member:
            print(f"[{index}] member of {spec.label}")
        else:
            assert witness is not None
            print(f"[{index}] not member: {witness.pattern} at {_labelled(item, witness.mapping)}")
    return code


def _solve_each(config: RunConfig, what: Literal["color", "clique"]) -> int:
    code = EXIT_CLEAN
    for index, item in _graphs(config):
        if isinstance(item, ErrorRecord):
            print(_render_report(item), file=sys.stderr)
            code = EXIT_FOUND
            continue
        if item.n == 0:
            print(f"[{index}] empty graph", file=sys.stderr)
            code = EXIT_FOUND
            continue
        try:
            if what == "color":
                k, coloring = chromatic_number(item, Deadline(config.budget_secs))
                payload = {"chi": k, "coloring": list(coloring.colors), "palette_base": 0}
                human = f"chi = {k}\n{_render_coloring(item, coloring.colors)}"
            else:
                omega, cert = max_clique(item, Deadline(config.budget_secs))
                payload = {"omega": omega, "clique": list(cert.vertices)}
                human = f"omega = {omega}\n{_labelled(item, cert.vertices)}"
        except SolverTimeout:
            payload = {"undecided": True}
            human = f"undecided within {config.budget_secs}s"
            code = EXIT_FOUND
        if config.format == "jsonl":
            _emit({"index": index, "graph_id": graph_id(item), **payload})
        else:
            print(f"[{index}] {human}")
    return code


def cmd_color(config: RunConfig) -> int:
    return _solve_each(config, "color")


def cmd_clique(config: RunConfig) -> int:
    return _solve_each(config, "clique")


def _options(config: RunConfig, with_spec: bool) -> VerifyOptions:
    spec = config.class_spec() if with_spec else None
    return VerifyOptions(checks=config.checks, spec=spec, budget=config.budget_secs)


def cmd_verify(config: RunConfig, with_spec: bool) -> int:
    options = _options(config, with_spec)
    records = scan_corpus(_load(config), options, workers=config.workers)
    return _stream(config, records)


def _sampled(config: RunConfig) -> Iterator[Graph]:
    spec = config.class_spec()
    sizes = range(config.n_min, config.n_max + 1)
    # one child seed per size, all derived from the seed printed in the header
    children = np.random.SeedSequence(config.seed).spawn(len(sizes))
    for n, child in zip(sizes, children):
        if config.delta is not None and config.delta >= n:
            logger.info("skipping n=%d: target degree %d needs more vertices", n, config.delta)
            continue
        seed = int(child.generate_state(1)[0])
        yield from sample_class_members(spec, n, config.count, seed, target_delta=config.delta)


def cmd_scan(config: RunConfig) -> int:
    if config.mode == "sample":
        options = _options(config, with_spec=True)
        return _stream(config, scan_graphs(_sampled(config), options, workers=config.workers))

    errors = 0

    def corpus() -> Iterator[Graph]:
        nonlocal errors
        for _, item in _graphs(config):
            if isinstance(item, ErrorRecord):
                errors += 1
                print(_render_report(item), file=sys.stderr)
            else:
                yield item

    report = search_relaxed(corpus(), config.class_spec(), config.budget_secs, seed=config.seed)
    if config.format == "jsonl":
        _emit({"config": config.model_dump(mode="json")})
        _emit({"relaxed": report.model_dump(mode="json"), "errors": errors})
    else:
        print(f"# config: {config.model_dump_json()}")
        print(
            f"examined={report.examined} candidates={len(report.candidates)} "
            f"undecided={len(report.undecided)} audited={report.audited} "
            f"audit_failures={len(report.audit_failures)} "
            f"counterexamples={len(report.counterexamples)} errors={errors}"
        )
        for stage, dropped in report.dropped.items():
            print(f"    dropped at {stage}: {dropped}")
        for candidate in report.candidates:
            print(f"    candidate [{candidate.index}] {candidate.graph_id}")
    if not report.clean or errors or (report.undecided and not config.allow_undecided):
        return EXIT_FOUND
    return EXIT_CLEAN


# Parser


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph6", help="inline graph6 record")
    p.add_argument("--input", nargs="+", default=[], help="graph6 files (.zst allowed, - = stdin)")
    p.add_argument("--named", help="catalog key or structural name (P6, C4, K7) as input")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["human", "jsonl"], default="human")
    p.add_argument(
        "--budget-secs",
        type=float,
        default=DEFAULT_BUDGET_SECS,
        help=f"solver budget per graph (default: {DEFAULT_BUDGET_SECS})",
    )


def _add_class(p: argparse.ArgumentParser, default: str | None) -> None:
    p.add_argument(
        "--class",
        dest="class_name",
        default=default,
        help=f"{' | '.join(NAMED_CLASSES)} | custom:<file>",
    )


def _add_run(p: argparse.ArgumentParser) -> None:
    p.add_argument("--checks", default=",".join(DEFAULT_CHECKS), help=f"from {', '.join(CHECKS)}")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-undecided", action="store_true", help="undecided graphs exit 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bkverify",
        description="Verify coloring bounds on graphs with forbidden induced subgraphs.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # -- pattern --
    p_pattern = subparsers.add_parser("pattern", help="print a catalog pattern")
    p_pattern.add_argument("name")
    p_pattern.add_argument("--format", choices=["human", "jsonl"], default="human")

    # -- detect --
    p_detect = subparsers.add_parser("detect", help="class membership with a witness")
    _add_input(p_detect)
    _add_common(p_detect)
    _add_class(p_detect, "p6c4c5plus")
    p_detect.add_argument("--patterns", help="comma-separated pattern keys (overrides --class)")

    # -- color / clique --
    for name, help_text in (("color", "exact chromatic number"), ("clique", "exact clique number")):
        p = subparsers.add_parser(name, help=help_text)
        _add_input(p)
        _add_common(p)

    # -- verify --
    p_verify = subparsers.add_parser("verify", help="run bound checks over a corpus")
    _add_input(p_verify)
    _add_common(p_verify)
    _add_class(p_verify, None)
    _add_run(p_verify)

    # -- scan --
    p_scan = subparsers.add_parser("scan", help="sample class members or search relaxed graphs")
    _add_input(p_scan)
    _add_common(p_scan)
    _add_class(p_scan, "p6c4c5plus")
    _add_run(p_scan)
    p_scan.add_argument("--mode", choices=["sample", "relaxed"], default="sample")
    p_scan.add_argument("--seed", type=int)
    p_scan.add_argument("--n", dest="n_range", default="10-16", help="vertex count or range a-b")
    p_scan.add_argument("--count", type=int, default=10, help="graphs per vertex count")
    p_scan.add_argument("--delta", type=int, help="exact maximum degree of sampled graphs")
    return parser


def _parse_range(text: str) -> tuple[int, int]:
    low, _, high = text.partition("-")
    return int(low), int(high or low)


def _config(args: argparse.Namespace) -> RunConfig:
    values: dict = {"command": args.command, "format": args.format}
    for key in ("graph6", "named", "budget_secs", "workers", "mode", "count", "delta"):
        if getattr(args, key, None) is not None:
            values[key] = getattr(args, key)
    if getattr(args, "input", None):
        values["input"] = tuple(args.input)
    if getattr(args, "class_name", None) is not None:
        values["class_name"] = args.class_name
    if getattr(args, "patterns", None):
        values["patterns"] = tuple(p.strip() for p in args.patterns.split(","))
    if getattr(args, "checks", None):
        values["checks"] = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    if getattr(args, "allow_undecided", False):
        values["allow_undecided"] = True
    if getattr(args, "n_range", None):
        values["n_min"], values["n_max"] = _parse_range(args.n_range)
    if args.command == "scan":
        seed = args.seed
        if seed is None:
            seed = int(np.random.SeedSequence().generate_state(1)[0])
        values["seed"] = seed
    return RunConfig(**values)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "pattern":
        return cmd_pattern(args)

    try:
        config = _config(args)
        if config.command in ("detect", "scan") or getattr(args, "class_name", None) is not None:
            config.class_spec()
        if config.named is not None:
            resolve_pattern(config.named)
    except (ValidationError, ValueError) as e:
        print(f"bkverify: {e}", file=sys.stderr)
        return EXIT_USAGE

    if config.command == "detect":
        return cmd_detect(config)
    if config.command == "color":
        return cmd_color(config)
    if config.command == "clique":
        return cmd_clique(config)
    if config.command == "verify":
        return cmd_verify(config, with_spec=args.class_name is not None)
    return cmd_scan(config)


if __name__ == "__main__":
    sys.exit(main())
