"""Reading and writing graph6 records.

For a description of the format, see
https://users.cecs.anu.edu.au/~bdm/data/formats.txt

Records are validated here (so errors can point at the offending byte) and the bit payload is
decoded/encoded by networkx.
"""

import io
from pathlib import Path
from typing import IO, Iterable, Iterator

import networkx as nx
import zstandard as zstd

from bkverify.models.graphs import Graph


HEADER = b">>graph6<<"
_MIN_BYTE = 63
_MAX_BYTE = 126


class Graph6Error(ValueError):
    """
    A malformed graph6 record.

    Attributes
    ----------
    offset : int
        Byte offset (within the record, header excluded) where parsing failed.
    line : int | None
        One-based line number when the record came from a file.

    """

    def __init__(self, message: str, offset: int, line: int | None = None):
        self.message = message
        self.offset = offset
        self.line = line
        where = f"line {line}, " if line is not None else ""
        super().__init__(f"{message} ({where}byte {offset})")

    def at_line(self, line: int) -> "Graph6Error":
        return Graph6Error(self.message, self.offset, line)


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return ``(n, header_length)`` of the size field at the start of `data`."""
    if not data:
        raise Graph6Error("empty record", 0)
    if data[0] != _MAX_BYTE:
        return data[0] - _MIN_BYTE, 1

    if len(data) >= 2 and data[1] == _MAX_BYTE:
        width, start = 6, 2
    else:
        width, start = 3, 1
    if len(data) < start + width:
        raise Graph6Error("truncated size field", len(data))

    n = 0
    for byte in data[start : start + width]:
        n = (n << 6) | (byte - _MIN_BYTE)
    return n, start + width


def from_graph6(text: bytes | str) -> Graph:
    """
    Parse a single graph6 record.

    Parameters
    ----------
    text : bytes | str
        The record; a trailing newline and an optional ``>>graph6<<`` header are tolerated.

    Returns
    -------
    Graph

    Raises
    ------
    Graph6Error
        On sparse6/digraph6 input, bytes outside 63..126, or a payload of the wrong length.

    """
    if isinstance(text, str):
        for offset, char in enumerate(text):
            if not char.isascii():
                raise Graph6Error(f"non-ascii character {char!r}", offset)
        text = text.encode("ascii")
    data = bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(HEADER):
        data = data[len(HEADER) :]

    if data.startswith(b":") or data.startswith(b";"):
        raise Graph6Error("sparse6 records are not supported", 0)
    if data.startswith(b"&"):
        raise Graph6Error("digraph6 records are not supported", 0)

    for offset, byte in enumerate(data):
        if not _MIN_BYTE <= byte <= _MAX_BYTE:
            raise Graph6Error(f"byte {byte!r} outside the printable graph6 range", offset)

    n, start = _decode_size(data)
    expected = (n * (n - 1) // 2 + 5) // 6
    payload = len(data) - start
    if payload < expected:
        raise Graph6Error(f"truncated payload for n={n}", len(data))
    if payload > expected:
        raise Graph6Error(f"trailing bytes after payload for n={n}", start + expected)
    padding = 6 * expected - n * (n - 1) // 2
    if padding and (data[-1] - _MIN_BYTE) & ((1 << padding) - 1):
        raise Graph6Error(f"non-zero padding bits for n={n}", len(data) - 1)

    # NB: networkx numbers the vertices 0..n-1 in graph6 order
    return Graph.from_networkx(nx.from_graph6_bytes(data))


def to_graph6(g: Graph) -> bytes:
    """Encode `g` as a graph6 record (no header, no newline)."""
    return nx.to_graph6_bytes(g.to_networkx(), header=False).rstrip(b"\n")


def graph_id(g: Graph) -> str:
    return to_graph6(g).decode("ascii")


def _open_corpus(path: Path) -> IO[bytes]:
    if path.suffix == ".zst":
        dctx = zstd.ZstdDecompressor()
        return io.BufferedReader(dctx.stream_reader(open(path, "rb"), closefd=True))
    return open(path, "rb")


def iter_graph6_lines(stream: Iterable[bytes]) -> Iterator[tuple[int, bytes]]:
    """
    Yield ``(line_number, record)`` for every non-empty record of a newline-delimited stream.

    A ``>>graph6<<`` header on its own or in front of the first record is skipped.
    """
    for lineno, raw in enumerate(stream, start=1):
        record = raw.strip()
        if record.startswith(HEADER):
            record = record[len(HEADER) :]
        if record:
            yield lineno, record


def read_graph6_file(path: str | Path) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """
    Read a graph6 corpus (optionally ``.zst``-compressed).

    Malformed records are yielded as `Graph6Error` instances (with the line number set) rather
    than raised, so that a scan can report them and continue.

    Yields
    ------
    tuple[int, Graph | Graph6Error]
        The one-based line number and the parsed graph or the parse error.

    """
    with _open_corpus(Path(path)) as f:
        for lineno, record in iter_graph6_lines(f):
            try:
                yield lineno, from_graph6(record)
            except Graph6Error as e:
                yield lineno, e.at_line(lineno)


def write_graph6(graphs: Iterable[Graph], stream: IO[bytes]) -> int:
    """Write one record per line; return the number of records written."""
    count = 0
    for g in graphs:
        stream.write(to_graph6(g) + b"\n")
        count += 1
    return count
