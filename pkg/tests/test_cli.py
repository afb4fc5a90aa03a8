"""Test the command-line front-end."""

import json

import pytest

from bkverify.cli import EXIT_CLEAN, EXIT_FOUND, EXIT_USAGE, RunConfig, main
from bkverify.models.graphs import Graph, join, make_complete, make_cycle, make_empty, make_path
from bkverify.utils.io.graph6 import to_graph6


def _jsonl(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture(scope="function")
def fixture_corpus(tmp_path):
    """A corpus with K7, C5 and one malformed record on line 3."""
    path = tmp_path / "corpus.g6"
    lines = [to_graph6(make_complete(7)), to_graph6(make_cycle(5)), b"Bx~"]
    path.write_bytes(b"\n".join(lines) + b"\n")
    return path


def test_pattern(capsys):
    assert main(["pattern", "c5plus"]) == EXIT_CLEAN
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("c5plus")
    assert "n=10 m=22" in lines[0]
    assert len(lines) == 2 + 22
    assert "v1 - v2" in lines

    assert main(["pattern", "K5-e", "--format", "jsonl"]) == EXIT_CLEAN
    (record,) = _jsonl(capsys.readouterr().out)
    assert (record["n"], record["m"]) == (5, 9)

    assert main(["pattern", "nosuch"]) == EXIT_USAGE
    assert "c5plus" in capsys.readouterr().err


def test_detect(capsys):
    assert main(["detect", "--named", "C4"]) == EXIT_CLEAN
    assert "not member: C4" in capsys.readouterr().out

    assert main(["detect", "--named", "C5"]) == EXIT_CLEAN
    assert "member of (P6,C4,c5plus)-free" in capsys.readouterr().out

    assert main(["detect", "--named", "c5plus", "--class", "p6c4", "--format", "jsonl"]) == 0
    (record,) = _jsonl(capsys.readouterr().out)
    assert record["member"] is True
    assert record["witness"] is None


def test_detect_custom_class(capsys, tmp_path):
    """Two inline patterns of the same size are told apart in the witness."""
    claw = join(make_complete(1), make_empty(3))
    path = tmp_path / "class.txt"
    path.write_bytes(to_graph6(make_path(4)) + b"\n" + to_graph6(claw) + b"\n")
    argv = ["detect", "--graph6", to_graph6(claw).decode(), "--class", f"custom:{path}"]
    assert main(argv + ["--format", "jsonl"]) == EXIT_CLEAN
    (record,) = _jsonl(capsys.readouterr().out)
    assert record["member"] is False
    assert record["witness"]["pattern"] == f"inline:{to_graph6(claw).decode()}"


def test_color_and_clique(capsys):
    assert main(["clique", "--named", "K7"]) == EXIT_CLEAN
    assert "omega = 7" in capsys.readouterr().out
    assert main(["color", "--named", "K7"]) == EXIT_CLEAN
    assert "chi = 7" in capsys.readouterr().out

    assert main(["color", "--graph6", to_graph6(make_cycle(5)).decode(), "--format", "jsonl"]) == 0
    (record,) = _jsonl(capsys.readouterr().out)
    assert record["chi"] == 3
    assert len(set(record["coloring"])) == 3

    assert main(["clique", "--named", "C5", "--format", "jsonl"]) == EXIT_CLEAN
    (record,) = _jsonl(capsys.readouterr().out)
    assert record["omega"] == 2


def test_usage_errors(capsys):
    assert main(["color"]) == EXIT_USAGE
    assert main(["color", "--named", "K7", "--graph6", "Bw"]) == EXIT_USAGE
    assert main(["detect", "--named", "nosuch"]) == EXIT_USAGE
    assert main(["verify", "--named", "K7", "--checks", "nosuch"]) == EXIT_USAGE
    assert main(["verify", "--named", "K7", "--class", "nosuch"]) == EXIT_USAGE
    assert main(["scan", "--n", "9-8"]) == EXIT_USAGE
    with pytest.raises(SystemExit):
        main(["nosuch"])


def test_verify_corpus(capsys, fixture_corpus):
    """The malformed line is reported with its line number and makes the run exit 1."""
    code = main(["verify", "--input", str(fixture_corpus), "--format", "jsonl"])
    assert code == EXIT_FOUND
    records = _jsonl(capsys.readouterr().out)
    assert "config" in records[0]
    assert records[0]["config"]["input"] == [str(fixture_corpus)]

    k7, c5, error = records[1:4]
    assert k7["chi"] == 7
    assert k7["checks"]["brooks"]["verdict"] == "pass"
    assert c5["checks"]["brooks"]["verdict"] == "skipped"
    assert c5["checks"]["ratio"]["tight"]
    assert error["line"] == 3

    summary = records[-1]["summary"]
    assert (summary["total"], summary["errors"], summary["failed"]) == (3, 1, 0)


def test_verify_bk(capsys, tmp_path):
    """A planted K10 minus an edge passes the degree-9 check."""
    g = Graph.from_edges(10, [(v, w) for v in range(10) for w in range(v + 1, 10) if v + w > 1])
    path = tmp_path / "planted.g6"
    path.write_bytes(to_graph6(g) + b"\n")
    code = main(["verify", "--input", str(path), "--checks", "bk", "--format", "jsonl"])
    assert code == EXIT_CLEAN
    record = _jsonl(capsys.readouterr().out)[1]
    assert record["checks"]["bk"]["verdict"] == "pass"
    assert record["checks"]["bk"]["bound"] == 9


def test_scan_sample_reproducible(capsys):
    """A fixed seed gives the same graphs."""
    argv = ["scan", "--seed", "3", "--n", "7-8", "--count", "2", "--format", "jsonl"]
    runs = []
    for _ in range(2):
        assert main(argv) == EXIT_CLEAN
        records = _jsonl(capsys.readouterr().out)
        assert records[0]["config"]["seed"] == 3
        runs.append([r["graph_id"] for r in records[1:-1]])
    assert runs[0] == runs[1]
    assert len(runs[0]) == 4


def test_scan_relaxed(capsys, tmp_path):
    path = tmp_path / "corpus.g6"
    lines = [to_graph6(make_complete(10)), to_graph6(make_cycle(5))]
    path.write_bytes(b"\n".join(lines) + b"\n")
    argv = ["scan", "--mode", "relaxed", "--class", "p6c4", "--input", str(path)]
    assert main(argv + ["--format", "jsonl"]) == EXIT_CLEAN
    records = _jsonl(capsys.readouterr().out)
    relaxed = records[-1]["relaxed"]
    assert relaxed["examined"] == 2
    assert relaxed["candidates"] == []


def test_run_config():
    config = RunConfig(command="detect", named="C4", patterns=("P5", "C4"))
    assert config.class_spec().label == "(P5,C4)-free"
    with pytest.raises(ValueError):
        RunConfig(command="verify")
    with pytest.raises(ValueError):
        RunConfig(command="scan", budget_secs=0)
