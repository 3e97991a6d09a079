"""Storage graphs: data model, file format, neighborhoods.

Vertices are labelled ``0..n-1``. Undirected edges are stored once as
``(u, v)`` with ``u < v``; directed edges are stored as given and ``(u, v)``
means ``v`` is a repair source for ``u`` (``v`` is in ``N(u)``).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import FormatError


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)
    directed: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        canon = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            e = (u, v) if self.directed or u < v else (v, u)
            if e in canon:
                raise ValueError(f"duplicate edge {e}")
            canon.add(e)
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], directed: bool = False) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges), directed)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Out-neighborhood bitmask per vertex (all neighbors when undirected)."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            if not self.directed:
                adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def in_adjacency(self) -> tuple[int, ...]:
        if not self.directed:
            return self.adjacency
        adj = [0] * self.n
        for u, v in self.edges:
            adj[v] |= 1 << u
        return tuple(adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.adjacency[v] == 0]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled; also returns the old labels in order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), edges, self.directed), keep

    def disjoint_union(self, other: "Graph") -> "Graph":
        if self.directed != other.directed:
            raise ValueError("cannot union directed with undirected graph")
        shifted = [(u + self.n, v + self.n) for u, v in other.edges]
        return Graph.from_edges(self.n + other.n, list(self.edges) + shifted, self.directed)

    def as_symmetric_digraph(self) -> "Graph":
        if self.directed:
            return self
        arcs = [(u, v) for u, v in self.edges] + [(v, u) for u, v in self.edges]
        return Graph.from_edges(self.n, arcs, directed=True)

    def summary(self) -> dict:
        return {"n": self.n, "m": self.m, "directed": self.directed}


def neighborhood(G: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < G.n:
        raise IndexError(f"vertex {v} out of range for n={G.n}")
    return frozenset(members(G.adjacency[v]))


def neighborhood_mask(G: Graph, U: int) -> int:
    """Vertices outside ``U`` reached by an edge leaving ``U`` (bitmask form)."""
    out = 0
    for u in members(U):
        out |= G.adjacency[u]
    return out & ~U


def neighborhood_of_set(G: Graph, U: Iterable[int]) -> frozenset[int]:
    U = mask_of(U)
    if U >> G.n:
        raise IndexError("vertex set out of range")
    return frozenset(members(neighborhood_mask(G, U)))


# --- file format -----------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse ``p rdss <n> <m> <u|d>`` followed by ``e <u> <v>`` lines."""
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if header is None:
            if len(tok) != 5 or tok[0] != "p" or tok[1] != "rdss" or tok[4] not in ("u", "d"):
                raise FormatError("expected header 'p rdss <n> <m> <u|d>'", lineno)
            try:
                n, m = int(tok[2]), int(tok[3])
            except ValueError:
                raise FormatError("vertex/edge counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise FormatError("negative count in header", lineno)
            header = (n, m, tok[4] == "d")
            continue
        n, m, directed = header
        if tok[0] != "e" or len(tok) != 3:
            raise FormatError("expected edge line 'e <u> <v>'", lineno)
        try:
            u, v = int(tok[1]), int(tok[2])
        except ValueError:
            raise FormatError("edge endpoints must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex index out of range in edge ({u}, {v})", lineno)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add(key)
        edges.append((u, v))
        if len(edges) > m:
            raise FormatError(f"more than {m} edges declared", lineno)
    if header is None:
        raise FormatError("missing header", None)
    n, m, directed = header
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}", None)
    G = Graph.from_edges(n, edges, directed)
    iso = G.isolated_vertices()
    if iso:
        warnings.warn(f"isolated vertices {iso} must store constant content", stacklevel=2)
    return G


def serialize_graph(G: Graph) -> str:
    lines = [f"p rdss {G.n} {G.m} {'d' if G.directed else 'u'}"]
    lines += [f"e {u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


# --- named graphs used throughout tests and docs ----------------------------

def cycle_graph(n: int, directed: bool = False) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], directed)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int, directed: bool = False) -> Graph:
    if directed:
        return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(n) if u != v], True)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty_graph(n: int, directed: bool = False) -> Graph:
    return Graph(n, frozenset(), directed)


def pentagon() -> Graph:
    return cycle_graph(5)
