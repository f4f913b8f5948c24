"""graph6 and edge-list interchange formats."""

from __future__ import annotations

from .errors import GraphError
from .graphs import Graph, build_graph


class ParseError(GraphError):
    """Input rejected; ``offset`` is a byte offset (graph6) or line (edge lists)."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at {offset})")
        self.offset = offset


def _read_g6_size(data: bytes) -> tuple[int, int]:
    """Decode the graph6 size header; returns (n, bytes consumed)."""
    if not data:
        raise ParseError("empty graph6 string", 0)
    c = data[0]
    if c == 126:  # '~': extended sizes
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise ParseError("truncated 8-byte size header", len(data))
            vals = [b - 63 for b in data[2:8]]
            if any(v < 0 or v > 63 for v in vals):
                raise ParseError("invalid size byte", 2)
            n = 0
            for v in vals:
                n = n << 6 | v
            return n, 8
        if len(data) < 4:
            raise ParseError("truncated 4-byte size header", len(data))
        vals = [b - 63 for b in data[1:4]]
        if any(v < 0 or v > 63 for v in vals):
            raise ParseError("invalid size byte", 1)
        n = 0
        for v in vals:
            n = n << 6 | v
        return n, 4
    if not 63 <= c <= 126:
        raise ParseError(f"invalid header byte {c}", 0)
    return c - 63, 1


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 line (optional '>>graph6<<' prefix tolerated)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii")
    n, pos = _read_g6_size(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(
            f"expected {need} payload bytes for n={n}, got {len(body)}", pos)
    bitstream = 0
    for off, b in enumerate(body):
        v = b - 63
        if v < 0 or v > 63:
            raise ParseError(f"invalid payload byte {b}", pos + off)
        bitstream = bitstream << 6 | v
    total = len(body) * 6
    pad = total - nbits
    if pad and bitstream & ((1 << pad) - 1):
        raise ParseError("nonzero padding bits", pos + len(body) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream >> (total - 1 - k) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def to_graph6(G: Graph) -> str:
    n = G.n
    if n <= 62:
        header = bytes([n + 63])
    elif n <= 258047:
        header = bytes([126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    else:
        header = bytes([126, 126] + [(n >> (6 * k) & 63) + 63 for k in range(5, -1, -1)])
    bitsbuf = []
    for j in range(1, n):
        for i in range(j):
            bitsbuf.append(1 if G.has_edge(i, j) else 0)
    while len(bitsbuf) % 6:
        bitsbuf.append(0)
    body = bytearray()
    for k in range(0, len(bitsbuf), 6):
        v = 0
        for b in bitsbuf[k:k + 6]:
            v = v << 1 | b
        body.append(v + 63)
    return (header + bytes(body)).decode("ascii")


def parse_edge_list(text: str) -> Graph:
    """Lines "u v"; an optional first line "n <count>" fixes the order."""
    n = None
    edges = []
    max_v = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None or edges:
                raise ParseError(f"line {lineno}: stray size header", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"line {lineno}: malformed size header", lineno)
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer endpoint", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative endpoint", lineno)
        if u == v:
            raise ParseError(f"line {lineno}: loop edge {u} {v}", lineno)
        edges.append((u, v))
        max_v = max(max_v, u, v)
    if n is None:
        n = max_v + 1
    return build_graph(n, edges)


def parse_graph_lines(text: str) -> list[Graph]:
    """One graph6 string per nonempty line."""
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(parse_graph6(line))
    return out
