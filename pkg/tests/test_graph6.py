"""Test the graph6 reader and writer."""

import io

import pytest
import zstandard as zstd
from hypothesis import given

from bkverify.models.graphs import Graph, make_complete, make_cycle, make_empty
from bkverify.utils.io.graph6 import (
    Graph6Error,
    from_graph6,
    read_graph6_file,
    to_graph6,
    write_graph6,
)

from .conftest import small_graphs


def test_known_records():
    assert from_graph6("Bw") == make_complete(3)
    assert from_graph6(b"Bw\n") == make_complete(3)
    assert from_graph6(">>graph6<<Bw") == make_complete(3)
    assert to_graph6(make_empty(1)) == b"@"
    assert to_graph6(make_complete(3)) == b"Bw"


def test_large_header():
    """Graphs with 63 or more vertices use the long size field."""
    g = make_cycle(70)
    record = to_graph6(g)
    assert record.startswith(b"~")
    assert from_graph6(record) == g


@pytest.mark.parametrize(
    "record, offset",
    [
        (b"", 0),
        (b"C", 1),  # n=4 needs one payload byte
        (b"Bww", 2),  # one byte too many
        (b"Bx", 1),  # padding bit set
        (b"D?@", 2),  # n=5 leaves two padding bits
        (b"B\x1f", 1),  # below the printable range
        (b":Fa@x^", 0),  # sparse6
        (b"&Bw", 0),  # digraph6
    ],
)
def test_malformed_records(record, offset):
    """Test that errors point at the offending byte."""
    with pytest.raises(Graph6Error) as e:
        from_graph6(record)
    assert e.value.offset == offset


def test_non_ascii():
    with pytest.raises(Graph6Error):
        from_graph6("Bé")


@given(small_graphs(min_n=0, max_n=12))
def test_roundtrip(g):
    assert from_graph6(to_graph6(g)) == g


def _corpus(graphs: list[Graph], bad_line: bytes) -> bytes:
    stream = io.BytesIO()
    write_graph6(graphs, stream)
    return b">>graph6<<\n" + stream.getvalue() + bad_line + b"\n\n"


@pytest.mark.parametrize("compressed", [False, True])
def test_read_file(tmp_path, compressed):
    """Test reading a corpus with a header, a bad line and a blank line."""
    graphs = [make_cycle(5), make_complete(4), make_empty(2)]
    data = _corpus(graphs, b"Bx~")
    path = tmp_path / "corpus.g6"
    if compressed:
        path = tmp_path / "corpus.g6.zst"
        data = zstd.ZstdCompressor().compress(data)
    path.write_bytes(data)

    items = list(read_graph6_file(path))
    assert len(items) == 4
    assert [item for _, item in items[:3]] == graphs
    assert [line for line, _ in items] == [2, 3, 4, 5]

    line, error = items[3]
    assert isinstance(error, Graph6Error)
    assert error.line == line == 5
    assert "line 5" in str(error)
