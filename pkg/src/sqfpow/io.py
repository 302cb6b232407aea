"""graph6 and JSON serialisation of graphs and hypergraphs."""

from __future__ import annotations

import json
from typing import Iterable, Iterator

from .errors import ParseError
from .hypergraph import Hypergraph, members

GRAPH6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return chr(126) + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return chr(126) * 2 + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Hypergraph) -> str:
    """Standard graph6 encoding (no header, no trailing newline)."""
    if not g.is_graph:
        raise ValueError("graph6 encodes graphs only")
    edges = set(g.edges)
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if ((1 << i) | (1 << j)) in edges else 0)
    while len(bits) % 6:
        bits.append(0)
    body = "".join(
        chr(int("".join(map(str, bits[p:p + 6])), 2) + 63) for p in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def from_graph6(text: str, line: int | None = None) -> Hypergraph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise ParseError("empty graph6 string", line, 1)
    for col, ch in enumerate(s, start=1):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", line, col)
    codes = [ord(c) - 63 for c in s]
    if codes[0] < 63:
        n, pos = codes[0], 1
    elif len(codes) >= 4 and codes[1] < 63:
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        pos = 4
    elif len(codes) >= 8:
        n = 0
        for c in codes[2:8]:
            n = (n << 6) | c
        pos = 8
    else:
        raise ParseError("truncated graph6 size header", line, 1)
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = codes[pos:]
    if len(body) != expected:
        raise ParseError(
            f"graph6 body has {len(body)} characters, expected {expected} for n={n}",
            line, pos + 1,
        )
    bits = []
    for c in body:
        bits.extend((c >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Hypergraph(n, edges)


def parse_graph(text: str, line: int | None = None) -> Hypergraph:
    """Parse one graph given either as graph6 or as a JSON edge list."""
    s = text.strip()
    if s.startswith("{"):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno if line is None else line, exc.colno) from exc
        try:
            return Hypergraph.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid hypergraph JSON: {exc}", line) from exc
    return from_graph6(s, line)


def read_graphs(lines: Iterable[str]) -> Iterator[Hypergraph]:
    """Parse a stream of graph6 lines (blank lines and ``#`` comments skipped).

    A stream whose first non-blank character is ``{`` is read as a single JSON
    document instead.
    """
    lines = list(lines)
    joined = "".join(lines).strip()
    if joined.startswith("{"):
        yield parse_graph(joined)
        return
    for no, raw in enumerate(lines, start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        yield parse_graph(s, no)


def hypergraph_label(h: Hypergraph) -> str:
    """graph6 for graphs, compact JSON otherwise; used as the row key in reports."""
    if h.is_graph:
        return to_graph6(h)
    return json.dumps(h.to_json(), separators=(",", ":"))


def monomial_name(mask: int) -> str:
    return "".join(f"x{v}" for v in members(mask)) or "1"
