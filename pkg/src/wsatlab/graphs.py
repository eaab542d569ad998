"""Compact undirected simple graphs on dense 0-based vertices.

Adjacency is kept as one Python int per vertex (bit i of ``rows[u]`` set
iff u~i), so neighborhood intersections are single word-parallel ``&``
operations.  Graphs are treated as immutable by every module except the
closure engine, which mutates only its private working copy.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def canon_edge(u: int, v: int) -> tuple[int, int]:
    """Canonical unordered pair (u < v)."""
    if u == v:
        raise ValueError(f"self-loop ({u},{v})")
    return (u, v) if u < v else (v, u)


class Graph:
    __slots__ = ("n", "rows", "_m")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        self.n = n
        self.rows = [0] * n
        self._m = 0

    # -- construction ---------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @classmethod
    def from_rows(cls, n: int, rows: list[int]) -> "Graph":
        g = cls(n)
        g.rows = list(rows)
        g._m = sum(r.bit_count() for r in rows) // 2
        return g

    def copy(self) -> "Graph":
        g = Graph(self.n)
        g.rows = list(self.rows)
        g._m = self._m
        return g

    def add_edge(self, u: int, v: int) -> None:
        u, v = canon_edge(u, v)
        if v >= self.n:
            raise ValueError(f"vertex {v} out of range (n={self.n})")
        if self.rows[u] >> v & 1:
            raise ValueError(f"duplicate edge ({u},{v})")
        self.rows[u] |= 1 << v
        self.rows[v] |= 1 << u
        self._m += 1

    # -- queries ---------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    @property
    def edge_count(self) -> int:
        return self._m

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def min_degree(self) -> int:
        return min(self.degree(u) for u in range(self.n))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            r = self.rows[u] >> (u + 1) << (u + 1)
            while r:
                v = (r & -r).bit_length() - 1
                yield (u, v)
                r &= r - 1

    def neighbors(self, u: int) -> list[int]:
        return bits(self.rows[u])

    def non_edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if not self.rows[u] >> v & 1:
                    yield (u, v)

    def is_complete(self) -> bool:
        return self._m == self.n * (self.n - 1) // 2

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


# -- named patterns -------------------------------------------------------


def make_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n >= 1 required")
    g = Graph(n)
    full = (1 << n) - 1
    g.rows = [full ^ (1 << u) for u in range(n)]
    g._m = n * (n - 1) // 2
    return g


def make_clique(r: int) -> Graph:
    if r < 2:
        raise ValueError("clique needs r >= 2")
    return make_complete(r)


def make_complete_bipartite(r: int, s: int) -> Graph:
    if r < 1 or s < 1:
        raise ValueError("both parts must be nonempty")
    g = Graph(r + s)
    for u in range(r):
        for v in range(r, r + s):
            g.add_edge(u, v)
    return g


def make_double_barbell(r: int) -> Graph:
    """Two copies of K_r joined by a pair of vertex-disjoint edges."""
    if r < 4:
        raise ValueError("double barbell needs r >= 4")
    g = Graph(2 * r)
    for a in range(r):
        for b in range(a + 1, r):
            g.add_edge(a, b)
            g.add_edge(r + a, r + b)
    g.add_edge(0, r)
    g.add_edge(1, r + 1)
    return g


# -- subgraphs and connectivity -------------------------------------------


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Induced subgraph, vertices relabeled 0..|S|-1 in ascending order."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("vertex set must be nonempty")
    if vs[-1] >= g.n or vs[0] < 0:
        raise ValueError("vertex out of range")
    pos = {v: i for i, v in enumerate(vs)}
    sub = Graph(len(vs))
    for i, v in enumerate(vs):
        for w in bits(g.rows[v]):
            j = pos.get(w)
            if j is not None and j > i:
                sub.add_edge(i, j)
    return sub


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.rows[u]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


# -- edge-list text format -------------------------------------------------
# First line: n in decimal.  Each following non-empty line: "u v".


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty edge-list input")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ValueError(f"bad vertex count line: {lines[0]!r}") from exc
    g = Graph(n)
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex out of range in line {ln!r}")
        g.add_edge(u, v)  # raises on self-loop and duplicate
    return g


def serialize_edge_list(g: Graph) -> str:
    out = [str(g.n)]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


# -- graph6 ----------------------------------------------------------------
# Per the published graph6 format: N(n) then the upper triangle in column
# order (0,1),(0,2),(1,2),(0,3),... packed into 6-bit groups, each +63.


def _g6_encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError("graph6 encoding limited to n <= 258047 here")


def _g6_decode_n(data: str) -> tuple[int, int]:
    """Returns (n, chars consumed)."""
    if not data:
        raise ValueError("empty graph6 input")
    c = ord(data[0])
    if c != 126:  # '~'
        if not 63 <= c <= 126:
            raise ValueError(f"bad graph6 byte {c}")
        return c - 63, 1
    if len(data) < 4:
        raise ValueError("truncated graph6 header")
    if data[1] == "~":
        raise ValueError("graph6 n > 258047 not supported")
    n = 0
    for ch in data[1:4]:
        c = ord(ch)
        if not 63 <= c <= 126:
            raise ValueError(f"bad graph6 byte {c}")
        n = n << 6 | (c - 63)
    return n, 4


def serialize_graph6(g: Graph) -> str:
    n = g.n
    out = [_g6_encode_n(n)]
    acc = 0
    nbits = 0
    for v in range(1, n):
        for u in range(v):
            acc = acc << 1 | (g.rows[u] >> v & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = 0
                nbits = 0
    if nbits:
        acc <<= 6 - nbits
        out.append(chr(acc + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[10:]
    n, pos = _g6_decode_n(data)
    if n < 1:
        raise ValueError("graph6 graph must have n >= 1")
    g = Graph(n)
    need = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (need + 5) // 6:
        raise ValueError(
            f"graph6 body length {len(body)}, expected {(need + 5) // 6}"
        )
    bit = 0
    for ch in body:
        c = ord(ch)
        if not 63 <= c <= 126:
            raise ValueError(f"bad graph6 byte {c}")
        group = c - 63
        for k in range(5, -1, -1):
            if bit >= need:
                if group >> k & 1:
                    raise ValueError("nonzero padding in graph6 body")
                continue
            if group >> k & 1:
                u, v = _g6_bit_to_pair(bit)
                g.add_edge(u, v)
            bit += 1
    return g


def _g6_bit_to_pair(i: int) -> tuple[int, int]:
    # Bit i lies in column v where C(v,2) <= i < C(v+1,2).
    v = int(((8 * i + 1) ** 0.5 + 1) / 2)
    while v * (v - 1) // 2 > i:
        v -= 1
    while (v + 1) * v // 2 <= i:
        v += 1
    return i - v * (v - 1) // 2, v
