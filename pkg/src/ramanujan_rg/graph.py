"""Simple undirected graphs on a dense boolean adjacency matrix.

Vertices are ``0..order-1``. A :class:`Graph` is immutable: its adjacency
array is marked read-only, so instances can be shared freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EmptyEdgeSet, MalformedGraph6

INFINITE = math.inf

GRAPH6_HEADER = ">>graph6<<"
_G6_MAX_ORDER = (1 << 36) - 1


@dataclass(frozen=True, eq=False)
class Graph:
    adjacency: np.ndarray
    label: Optional[str] = field(default=None)

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        if adj.shape[0] < 1:
            raise ValueError("graph order must be at least 1")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]], label=None) -> "Graph":
        adj = np.zeros((order, order), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj, label)

    @classmethod
    def empty(cls, order: int, label=None) -> "Graph":
        return cls(np.zeros((order, order), dtype=bool), label)

    @property
    def order(self) -> int:
        return self.adjacency.shape[0]

    @property
    def size(self) -> int:
        """Number of edges."""
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adjacency[v]).tolist()

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``i`` becomes ``perm[i]``."""
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return Graph(self.adjacency[np.ix_(inv, inv)], self.label)

    def with_label(self, label: Optional[str]) -> "Graph":
        return Graph(self.adjacency, label)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.order, np.packbits(self.adjacency).tobytes()))

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"<Graph{name} order={self.order} size={self.size}>"


def complement(g: Graph) -> Graph:
    adj = ~g.adjacency
    np.fill_diagonal(adj, False)
    return Graph(adj)


def line_graph(g: Graph) -> tuple[Graph, list[tuple[int, int]]]:
    """Line graph of ``g`` plus the edge list naming its vertices.

    Vertex ``i`` of the result is edge ``edges[i]`` of ``g``, edges taken in
    lexicographic order.
    """
    edges = g.edges()
    if not edges:
        raise EmptyEdgeSet("line graph of a graph without edges is undefined")
    m = len(edges)
    ends = np.asarray(edges)
    incidence = np.zeros((g.order, m), dtype=np.float32)
    cols = np.arange(m)
    incidence[ends[:, 0], cols] = 1
    incidence[ends[:, 1], cols] = 1
    # simple graph: two distinct edges share at most one endpoint
    shared = incidence.T @ incidence
    adj = shared == 1
    np.fill_diagonal(adj, False)
    return Graph(adj), edges


def degree_profile(g: Graph) -> tuple[bool, Optional[int]]:
    deg = g.degrees()
    if (deg == deg[0]).all():
        return True, int(deg[0])
    return False, None


def _bfs_levels(adj: np.ndarray, sources: np.ndarray) -> np.ndarray:
    """Distances from each source row to every vertex; -1 where unreachable.

    Level-synchronous BFS run from all sources at once.
    """
    n = adj.shape[0]
    a = adj.astype(np.float32)
    dist = np.full((len(sources), n), -1, dtype=np.int64)
    frontier = np.zeros((len(sources), n), dtype=bool)
    frontier[np.arange(len(sources)), sources] = True
    seen = frontier.copy()
    dist[frontier] = 0
    level = 0
    while frontier.any():
        level += 1
        frontier = ((frontier.astype(np.float32) @ a) > 0) & ~seen
        seen |= frontier
        dist[frontier] = level
    return dist


def is_connected(g: Graph) -> bool:
    dist = _bfs_levels(g.adjacency, np.array([0]))
    return bool((dist >= 0).all())


def diameter(g: Graph, block: int = 512) -> float | int:
    """Largest shortest-path distance, or :data:`INFINITE` if disconnected."""
    n = g.order
    best = 0
    for start in range(0, n, block):
        sources = np.arange(start, min(start + block, n))
        dist = _bfs_levels(g.adjacency, sources)
        if (dist < 0).any():
            return INFINITE
        best = max(best, int(dist.max()))
    return best


def triangle_count(g: Graph) -> int:
    a = g.adjacency.astype(np.int64)
    return int(np.trace(a @ a @ a)) // 6


# graph6 ----------------------------------------------------------------------

def _upper_bit_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    rows, cols = np.triu_indices(n, 1)
    order = np.lexsort((rows, cols))
    return rows[order], cols[order]


def _encode_order(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= _G6_MAX_ORDER:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"order {n} too large for graph6")


def emit_graph6(g: Graph) -> str:
    n = g.order
    rows, cols = _upper_bit_order(n)
    bits = g.adjacency[rows, cols].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    values = bits @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return _encode_order(n) + (values + 63).astype(np.uint8).tobytes().decode("ascii")


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise MalformedGraph6("empty graph6 string")
    try:
        data = np.frombuffer(s.encode("ascii"), dtype=np.uint8).astype(np.int64) - 63
    except UnicodeEncodeError as exc:
        raise MalformedGraph6(f"non-ASCII character in graph6 string: {exc}") from None
    bad = np.flatnonzero((data < 0) | (data > 63))
    if len(bad):
        raise MalformedGraph6(f"invalid character {s[bad[0]]!r} at offset {bad[0]}")

    if data[0] != 63:
        n, body = int(data[0]), data[1:]
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise MalformedGraph6("truncated 36-bit order field")
        n = 0
        for v in data[2:8]:
            n = (n << 6) | int(v)
        body = data[8:]
    else:
        if len(data) < 4:
            raise MalformedGraph6("truncated 18-bit order field")
        n = 0
        for v in data[1:4]:
            n = (n << 6) | int(v)
        body = data[4:]
    if n < 1:
        raise MalformedGraph6("graph6 order must be at least 1")

    nbits = n * (n - 1) // 2
    expected = -(-nbits // 6)
    if len(body) != expected:
        raise MalformedGraph6(f"expected {expected} data bytes for order {n}, got {len(body)}")
    bits = ((body[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1).astype(bool)
    if bits[nbits:].any():
        raise MalformedGraph6("nonzero padding bits")
    adj = np.zeros((n, n), dtype=bool)
    rows, cols = _upper_bit_order(n)
    adj[rows, cols] = bits[:nbits]
    return Graph(adj | adj.T)


def read_graph6_lines(lines: Iterable[str]):
    """Yield ``(line_number, text)`` for non-blank graph6 lines (1-based)."""
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        if text.startswith(GRAPH6_HEADER):
            text = text[len(GRAPH6_HEADER):]
            if not text:
                continue
        yield lineno, text


def emit_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(g.order))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
