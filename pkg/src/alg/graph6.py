"""graph6 encoding, short form only (n <= 62)."""

from __future__ import annotations

from typing import Iterator

from .errors import ParseError
from .graph import SimpleGraph

HEADER = ">>graph6<<"
MAX_SHORT_N = 62


def _bit_count(n: int) -> int:
    return n * (n - 1) // 2


def to_graph6(g: SimpleGraph) -> str:
    if g.n > MAX_SHORT_N:
        raise ValueError(f"graph6 short form supports n <= {MAX_SHORT_N}, got {g.n}")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def from_graph6(text: str) -> SimpleGraph:
    data = text.strip()
    base = 0
    if data.startswith(HEADER):
        data = data[len(HEADER):]
        base = len(HEADER)
    if not data:
        raise ParseError("empty graph6 string", base)
    for k, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"character {ch!r} outside the graph6 alphabet", base + k)
    n = ord(data[0]) - 63
    if n > MAX_SHORT_N:
        raise ParseError("long-form header (n > 62) is not supported", base)
    nbits = _bit_count(n)
    nchars = -(-nbits // 6)
    body = data[1:]
    if len(body) < nchars:
        raise ParseError(f"truncated bit vector: need {nchars} bytes, got {len(body)}",
                         base + 1 + len(body))
    if len(body) > nchars:
        raise ParseError("trailing bytes after bit vector", base + 1 + nchars)
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise ParseError("nonzero padding bits", base + len(data) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return SimpleGraph(n, tuple(sorted(edges)))


def read_graph6_lines(lines) -> Iterator[tuple[int, SimpleGraph | ParseError]]:
    """Yield ``(line_number, graph_or_error)`` for every non-blank line."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield lineno, from_graph6(line)
        except ParseError as exc:
            yield lineno, exc
