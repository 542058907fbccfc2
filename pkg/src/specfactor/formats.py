"""graph6 and plain edge-list text encodings.

graph6 packs the upper adjacency triangle in column order
x01, x02, x12, x03, x13, x23, ... into 6-bit groups, each group emitted as
one printable byte (value + 63).  The vertex count is one byte n+63 for
n <= 62, '~' plus three 6-bit bytes up to 258047, and '~~' plus six 6-bit
bytes beyond that.  An optional '>>graph6<<' header is accepted on input.

The edge-list format is a hand-editable fallback: an "n m" header line
followed by m lines "u v" with 0-indexed endpoints.
"""

from __future__ import annotations

from .graphs import Graph, GraphError, from_edges, _check_cap

HEADER = ">>graph6<<"


class FormatError(GraphError):
    """Malformed graph text."""


def _encode_n(n: int) -> str:
    if n < 0:
        raise FormatError(f"negative n {n}")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= (1 << 36) - 1:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise FormatError(f"n too large for graph6: {n}")


def _decode_n(data: str) -> tuple[int, int]:
    """Return (n, number of characters consumed)."""
    if not data:
        raise FormatError("empty graph6 string")
    c0 = ord(data[0]) - 63
    if c0 < 0 or c0 > 63:
        raise FormatError(f"bad graph6 byte {data[0]!r}")
    if c0 != 63:
        return c0, 1
    if len(data) >= 2 and data[1] == "~":
        if len(data) < 8:
            raise FormatError("truncated long-form vertex count")
        n = 0
        for ch in data[2:8]:
            v = ord(ch) - 63
            if v < 0 or v > 63:
                raise FormatError(f"bad graph6 byte {ch!r}")
            n = n << 6 | v
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated vertex count")
    n = 0
    for ch in data[1:4]:
        v = ord(ch) - 63
        if v < 0 or v > 63:
            raise FormatError(f"bad graph6 byte {ch!r}")
        n = n << 6 | v
    return n, 4


def write_graph6(g: Graph, header: bool = False) -> str:
    out = [_encode_n(g.n)]
    group = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            group = group << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(group + 63))
                group = 0
                nbits = 0
    if nbits:
        group <<= 6 - nbits
        out.append(chr(group + 63))
    body = "".join(out)
    return HEADER + body if header else body


def parse_graph6(text: str, cap: int | None = None) -> Graph:
    data = text.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    n, used = _decode_n(data)
    _check_cap(n, cap)
    tri = n * (n - 1) // 2
    need = (tri + 5) // 6
    body = data[used:]
    if len(body) < need:
        raise FormatError(f"graph6 body too short: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise FormatError(f"trailing garbage after graph6 body: {body[need:]!r}")
    bitstream = 0
    for ch in body:
        v = ord(ch) - 63
        if v < 0 or v > 63:
            raise FormatError(f"bad graph6 byte {ch!r}")
        bitstream = bitstream << 6 | v
    total_bits = 6 * need
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            bit = bitstream >> (total_bits - 1 - k) & 1
            if bit:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if bitstream & ((1 << (total_bits - tri)) - 1):
        raise FormatError("padding bits beyond the triangle are set")
    return Graph(n, tuple(rows))


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, cap: int | None = None) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise FormatError("empty edge-list text")
    head = lines[0].split()
    if len(head) != 2 or not all(tok.lstrip("-").isdigit() for tok in head):
        raise FormatError(f"bad edge-list header {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise FormatError(f"edge-list declares {m} edges but has {len(lines) - 1} lines")
    edges = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2 or not all(tok.isdigit() for tok in toks):
            raise FormatError(f"bad edge line {ln!r}")
        edges.append((int(toks[0]), int(toks[1])))
    try:
        return from_edges(n, edges, cap=cap)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc
