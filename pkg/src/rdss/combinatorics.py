"""Exact and approximate solvers for the graph quantities that sandwich capacity.

Vertex sets are returned as ``frozenset``; internally everything runs on
integer bitmasks.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

from . import config
from .config import Limits
from .errors import CapExceeded, NotApplicable
from .graph import Graph, members


def _need_undirected(G: Graph, op: str):
    if G.directed:
        raise NotApplicable(f"{op} requires an undirected graph")


def _need_directed(G: Graph, op: str):
    if not G.directed:
        raise NotApplicable(f"{op} requires a directed graph")


def _check_subset_cap(G: Graph, limits: Limits | None, what: str):
    cap = config.resolve(limits).subset_cap
    if G.n > cap:
        raise CapExceeded(what, G.n, cap)


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# --- maximum independent set on bitset adjacency ----------------------------

class _Found(Exception):
    pass


def mis_bitset(adj: list[int], cand: int, seed: int = 0, upper: int | None = None) -> int:
    """Maximum independent set inside ``cand``.

    Branch and bound in the style of Tomita's MCQ, with the colouring bound
    replaced by a greedy clique cover (an independent set takes at most one
    vertex per clique). ``seed`` is a known independent set used as the
    incumbent; the search stops as soon as ``upper`` is reached.
    """
    best = [seed, seed.bit_count()]

    def cover_order(P: int) -> list[tuple[int, int]]:
        order = []
        k = 0
        R = P
        while R:
            k += 1
            Q = R
            while Q:
                v = _low(Q)
                bit = 1 << v
                R &= ~bit
                Q &= adj[v] & ~bit
                order.append((v, k))
        return order

    def expand(chosen: int, size: int, P: int):
        for v, k in reversed(cover_order(P)):
            if size + k <= best[1]:
                return
            bit = 1 << v
            rest = P & ~adj[v] & ~bit
            if rest:
                expand(chosen | bit, size + 1, rest)
            elif size + 1 > best[1]:
                best[0], best[1] = chosen | bit, size + 1
                if upper is not None and best[1] >= upper:
                    raise _Found
            P &= ~bit

    if upper is not None and best[1] >= upper:
        return best[0]
    try:
        if cand:
            expand(0, 0, cand)
    except _Found:
        pass
    return best[0]


def max_independent_set(H: Graph) -> frozenset[int]:
    adj = [H.adjacency[v] | H.in_adjacency[v] for v in range(H.n)]
    return frozenset(members(mis_bitset(adj, H.full_mask)))


# --- matching and vertex cover -----------------------------------------------

def max_matching(G: Graph) -> frozenset[tuple[int, int]]:
    _need_undirected(G, "max_matching")
    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.n))
    nxg.add_edges_from(G.sorted_edges())
    mate = nx.max_weight_matching(nxg, maxcardinality=True)
    return frozenset((min(u, v), max(u, v)) for u, v in mate)


def maximal_matching(G: Graph) -> frozenset[tuple[int, int]]:
    _need_undirected(G, "maximal_matching")
    used = 0
    out = []
    for u, v in G.sorted_edges():
        if not (used >> u & 1 or used >> v & 1):
            used |= 1 << u | 1 << v
            out.append((u, v))
    return frozenset(out)


def min_vertex_cover(G: Graph, mode: str = "exact", limits: Limits | None = None) -> frozenset[int]:
    """Minimum vertex cover (exact) or endpoints of a greedy maximal matching (approx)."""
    _need_undirected(G, "min_vertex_cover")
    if mode == "approx":
        return frozenset(v for e in maximal_matching(G) for v in e)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    _check_subset_cap(G, limits, "min_vertex_cover")
    indep = mis_bitset(list(G.adjacency), G.full_mask)
    return frozenset(members(G.full_mask & ~indep))


def is_bipartite(G: Graph) -> tuple[bool, dict[int, int] | list[int]]:
    """Return ``(True, colouring)`` or ``(False, odd_cycle)``."""
    _need_undirected(G, "is_bipartite")
    color: dict[int, int] = {}
    parent: dict[int, int] = {}
    for s in range(G.n):
        if s in color:
            continue
        color[s] = 0
        parent[s] = -1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in members(G.adjacency[u]):
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return False, _odd_cycle(parent, u, w)
    return True, color


def _odd_cycle(parent: dict[int, int], u: int, w: int) -> list[int]:
    def chain(x):
        out = [x]
        while parent[x] != -1:
            x = parent[x]
            out.append(x)
        return out

    a, b = chain(u), chain(w)
    common = set(a) & set(b)
    ia = next(i for i, x in enumerate(a) if x in common)
    ib = b.index(a[ia])
    return a[: ia + 1] + list(reversed(b[:ib]))


# --- directed cycles and feedback vertex sets --------------------------------

def _acyclic(adj, S: int) -> bool:
    S_left = S
    changed = True
    while S_left and changed:
        changed = False
        for v in members(S_left):
            if adj[v] & S_left == 0:
                S_left &= ~(1 << v)
                changed = True
    return S_left == 0


def _shortest_cycle(adj, S: int) -> list[int] | None:
    best = None
    for s in members(S):
        parent = {s: -1}
        frontier = [s]
        found = None
        while frontier and found is None:
            nxt = []
            for u in frontier:
                if adj[u] >> s & 1:
                    found = u
                    break
                for w in members(adj[u] & S):
                    if w not in parent:
                        parent[w] = u
                        nxt.append(w)
            frontier = nxt
        if found is not None:
            cyc = []
            x = found
            while x != -1:
                cyc.append(x)
                x = parent[x]
            cyc.reverse()
            if best is None or len(cyc) < len(best):
                best = cyc
                if len(best) == 2:
                    break
    return best


def _trim(adj, in_adj, S: int) -> int:
    """Drop vertices with no in- or out-arc inside ``S`` (they lie on no cycle)."""
    changed = True
    while changed:
        changed = False
        for v in members(S):
            if adj[v] & S == 0 or in_adj[v] & S == 0:
                S &= ~(1 << v)
                changed = True
    return S


def is_acyclic(G: Graph, removed=()) -> bool:
    keep = G.full_mask
    for v in removed:
        keep &= ~(1 << v)
    return _acyclic(G.adjacency, keep)


def min_fvs(G: Graph, limits: Limits | None = None) -> frozenset[int]:
    """Minimum feedback vertex set by iterative deepening on shortest cycles."""
    _need_directed(G, "min_fvs")
    _check_subset_cap(G, limits, "min_fvs")
    adj, in_adj = G.adjacency, G.in_adjacency

    def search(S: int, budget: int) -> int | None:
        S = _trim(adj, in_adj, S)
        if S == 0:
            return 0
        if budget == 0:
            return None
        cyc = _shortest_cycle(adj, S)
        for v in sorted(cyc):
            sub = search(S & ~(1 << v), budget - 1)
            if sub is not None:
                return sub | 1 << v
        return None

    for k in range(G.n + 1):
        found = search(G.full_mask, k)
        if found is not None:
            return frozenset(members(found))
    raise AssertionError("unreachable: removing every vertex leaves an acyclic graph")


def canonical_cycle(cyc) -> tuple[int, ...]:
    i = cyc.index(min(cyc))
    return tuple(cyc[i:]) + tuple(cyc[:i])


def enumerate_cycles(G: Graph, limits: Limits | None = None) -> list[tuple[int, ...]]:
    """All simple directed cycles, smallest vertex first, sorted by (length, vertices)."""
    _need_directed(G, "enumerate_cycles")
    cap = config.resolve(limits).cycle_cap
    nxg = nx.DiGraph()
    nxg.add_nodes_from(range(G.n))
    nxg.add_edges_from(G.sorted_edges())
    out = []
    for cyc in nx.simple_cycles(nxg):
        out.append(canonical_cycle(cyc))
        if len(out) > cap:
            raise CapExceeded("enumerate_cycles", f">{cap}", cap)
    out.sort(key=lambda c: (len(c), c))
    return out


def is_cycle(G: Graph, cyc) -> bool:
    if len(set(cyc)) != len(cyc) or len(cyc) < 2:
        return False
    return all(G.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def _is_induced_cycle(G: Graph, cyc) -> bool:
    S = 0
    for v in cyc:
        S |= 1 << v
    arcs = sum((G.adjacency[v] & S).bit_count() for v in cyc)
    return arcs == len(cyc)


def _disjoint_family(masks: list[int], seed: int = 0) -> int:
    """Maximum pairwise-disjoint subfamily of ``masks`` (as a bitmask of indices)."""
    by_vertex: dict[int, int] = {}
    for i, m in enumerate(masks):
        for v in members(m):
            by_vertex[v] = by_vertex.get(v, 0) | 1 << i
    adj = []
    for i, m in enumerate(masks):
        a = 0
        for v in members(m):
            a |= by_vertex[v]
        adj.append(a & ~(1 << i))
    return mis_bitset(adj, (1 << len(masks)) - 1, seed=seed)


def max_vertex_disjoint_cycles(G: Graph, limits: Limits | None = None) -> list[tuple[int, ...]]:
    """Maximum family of pairwise vertex-disjoint directed cycles.

    Only induced cycles are searched: a chord always closes a shorter cycle on
    a subset of the vertices, so some optimum uses induced cycles only.
    """
    cycles = [c for c in enumerate_cycles(G, limits) if _is_induced_cycle(G, c)]
    masks = [sum(1 << v for v in c) for c in cycles]
    chosen = _disjoint_family(masks)
    return [cycles[i] for i in members(chosen)]


# --- clique partition -------------------------------------------------------

def _greedy_clique_partition(adj, order) -> list[int]:
    classes: list[int] = []
    for v in order:
        for i, c in enumerate(classes):
            if c & ~adj[v] == 0:
                classes[i] = c | 1 << v
                break
        else:
            classes.append(1 << v)
    return classes


def clique_partition(G: Graph, mode: str = "exact", limits: Limits | None = None) -> list[frozenset[int]]:
    """Partition V into cliques; ``exact`` minimises the number of parts."""
    _need_undirected(G, "clique_partition")
    adj = G.adjacency
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    best = _greedy_clique_partition(adj, order)
    if mode == "exact":
        _check_subset_cap(G, limits, "clique_partition")
        best_box = [best]
        lower = mis_bitset(list(adj), G.full_mask).bit_count()

        def assign(i: int, classes: list[int]):
            if len(classes) >= len(best_box[0]):
                return
            if i == len(order):
                best_box[0] = list(classes)
                return
            v = order[i]
            for j, c in enumerate(classes):
                if c & ~adj[v] == 0:
                    classes[j] = c | 1 << v
                    assign(i + 1, classes)
                    classes[j] = c
                    if len(best_box[0]) == lower:
                        return
            if len(classes) + 1 < len(best_box[0]):
                classes.append(1 << v)
                assign(i + 1, classes)
                classes.pop()

        if len(best) > lower:
            assign(0, [])
        best = best_box[0]
    elif mode != "greedy":
        raise ValueError(f"unknown mode {mode!r}")
    parts = [frozenset(members(c)) for c in best]
    return sorted(parts, key=lambda s: min(s))


# --- dissociation sets and 3-paths -------------------------------------------

def max_dissociation_set(G: Graph, limits: Limits | None = None) -> frozenset[int]:
    """Largest vertex set whose induced subgraph has maximum degree at most 1."""
    _need_undirected(G, "max_dissociation_set")
    _check_subset_cap(G, limits, "max_dissociation_set")
    adj = G.adjacency
    best = [0, 0]

    def allowed(w: int, D: int) -> bool:
        nb = adj[w] & D
        if nb == 0:
            return True
        if nb & (nb - 1):
            return False
        return adj[_low(nb)] & D == 0

    def search(D: int, size: int, P: int):
        P = sum(1 << w for w in members(P) if allowed(w, D))
        if size + P.bit_count() <= best[1]:
            return
        if P == 0:
            best[0], best[1] = D, size
            return
        v = max(members(P), key=lambda w: ((adj[w] & P).bit_count(), -w))
        bit = 1 << v
        search(D | bit, size + 1, P & ~bit)
        search(D, size, P & ~bit)

    search(0, 0, G.full_mask)
    return frozenset(members(best[0]))


@dataclass(frozen=True)
class PathPacking:
    paths: tuple[tuple[int, int, int], ...]
    exact: bool

    def __len__(self):
        return len(self.paths)


def three_paths(G: Graph) -> list[tuple[int, int, int]]:
    """One representative 3-path (a, b, c) per vertex set that contains one."""
    _need_undirected(G, "three_paths")
    seen = set()
    out = []
    for b in range(G.n):
        nb = members(G.adjacency[b])
        for i, a in enumerate(nb):
            for c in nb[i + 1:]:
                key = 1 << a | 1 << b | 1 << c
                if key not in seen:
                    seen.add(key)
                    out.append((a, b, c))
    return out


def vertex_disjoint_3paths(G: Graph, limits: Limits | None = None) -> PathPacking:
    """Maximum packing of vertex-disjoint 3-paths (greedy above the subset cap)."""
    paths = three_paths(G)
    masks = [1 << a | 1 << b | 1 << c for a, b, c in paths]
    if G.n <= config.resolve(limits).subset_cap:
        chosen = members(_disjoint_family(masks))
        return PathPacking(tuple(paths[i] for i in chosen), exact=True)
    used = 0
    picked = []
    for p, m in zip(paths, masks):
        if m & used == 0:
            used |= m
            picked.append(p)
    return PathPacking(tuple(picked), exact=False)
