"""Slow, obviously-correct reference implementations used only by the tests."""
from __future__ import annotations

import itertools
import random

import networkx as nx

from rdss.graph import Graph


def all_graphs(n: int):
    """Every labelled undirected graph on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def random_graph(rng: random.Random, n: int, p: float = 0.5, directed: bool = False) -> Graph:
    if directed:
        edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    else:
        edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges, directed)


def subsets_by_size(n: int):
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def independent(G: Graph, S) -> bool:
    return not any(G.has_edge(u, v) or G.has_edge(v, u) for u, v in itertools.combinations(S, 2))


def matching_number(G: Graph) -> int:
    edges = G.sorted_edges()
    best = 0
    for k in range(1, G.n // 2 + 1):
        if any(len({v for e in combo for v in e}) == 2 * k for combo in itertools.combinations(edges, k)):
            best = k
        else:
            break
    return best


def vertex_cover_number(G: Graph) -> int:
    for S in subsets_by_size(G.n):
        s = set(S)
        if all(u in s or v in s for u, v in G.edges):
            return len(S)


def independence_number(G: Graph) -> int:
    return max(len(S) for S in subsets_by_size(G.n) if independent(G, S))


def acyclic_without(G: Graph, removed) -> bool:
    H = nx.DiGraph()
    keep = [v for v in range(G.n) if v not in set(removed)]
    H.add_nodes_from(keep)
    H.add_edges_from((u, v) for u, v in G.edges if u in H and v in H)
    return nx.is_directed_acyclic_graph(H)


def fvs_number(G: Graph) -> int:
    for S in subsets_by_size(G.n):
        if acyclic_without(G, S):
            return len(S)


def directed_cycles(G: Graph) -> set[tuple[int, ...]]:
    """Simple directed cycles as rotation-canonical tuples, via permutations."""
    out = set()
    for k in range(2, G.n + 1):
        for S in itertools.combinations(range(G.n), k):
            first, rest = S[0], S[1:]
            for perm in itertools.permutations(rest):
                cyc = (first,) + perm
                if all(G.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
                    out.add(cyc)
    return out


def disjoint_cycle_number(G: Graph) -> int:
    cycles = [frozenset(c) for c in directed_cycles(G)]
    best = 0
    for k in range(1, len(cycles) + 1):
        found = False
        for combo in itertools.combinations(cycles, k):
            if sum(len(c) for c in combo) == len(frozenset().union(*combo)):
                found = True
                break
        if not found:
            break
        best = k
    return best


def dissociation_number(G: Graph) -> int:
    best = 0
    for S in subsets_by_size(G.n):
        s = set(S)
        if all(sum(1 for u in s if G.has_edge(v, u)) <= 1 for v in s):
            best = max(best, len(S))
    return best


def clique_cover_number(G: Graph) -> int:
    """Chromatic number of the complement, by trying k colours in turn."""
    n = G.n
    if n == 0:
        return 0
    for k in range(1, n + 1):
        for colours in itertools.product(range(k), repeat=n):
            if colours[0] != 0:
                continue
            ok = all(G.has_edge(u, v) for u, v in itertools.combinations(range(n), 2) if colours[u] == colours[v])
            if ok:
                return k


def three_path_packing_number(G: Graph) -> int:
    triples = []
    for b in range(G.n):
        nb = [v for v in range(G.n) if G.has_edge(b, v)]
        for a, c in itertools.combinations(nb, 2):
            triples.append(frozenset((a, b, c)))
    triples = list(set(triples))
    best = 0
    for k in range(1, G.n // 3 + 1):
        if any(len(frozenset().union(*c)) == 3 * k for c in itertools.combinations(triples, k)):
            best = k
        else:
            break
    return best


def confusable(G: Graph, x, y) -> bool:
    nbrs = [[j for j in range(G.n) if G.has_edge(i, j)] for i in range(G.n)]
    return any(x[i] != y[i] and all(x[j] == y[j] for j in nbrs[i]) for i in range(G.n))


def capacity_size(G: Graph, q: int) -> int:
    """Largest independent set of the confusion graph, via networkx max clique on the complement."""
    words = list(itertools.product(range(q), repeat=G.n))
    H = nx.Graph()
    H.add_nodes_from(range(len(words)))
    for i, j in itertools.combinations(range(len(words)), 2):
        if not confusable(G, words[i], words[j]):
            H.add_edge(i, j)
    _, size = nx.max_weight_clique(H, weight=None)
    return size


def rank_mod(rows, p: int) -> int:
    M = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        for i in range(len(M)):
            if i != rank and M[i][col] % p:
                f = M[i][col] * inv
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def minrank_number(G: Graph, q: int) -> int:
    """Minimum rank over every fitting matrix, with any nonzero diagonal."""
    slots = [(i, j) for i in range(G.n) for j in range(G.n) if i == j or G.has_edge(i, j)]
    best = G.n
    choices = [range(1, q) if i == j else range(q) for i, j in slots]
    for vals in itertools.product(*choices):
        A = [[0] * G.n for _ in range(G.n)]
        for (i, j), v in zip(slots, vals):
            A[i][j] = v
        best = min(best, rank_mod(A, q))
    return best


def a_q(n: int, d: int, q: int) -> int:
    """Largest code of length n with minimum distance d, by max clique on the 'far apart' graph."""
    words = list(itertools.product(range(q), repeat=n))
    H = nx.Graph()
    H.add_nodes_from(range(len(words)))
    for i, j in itertools.combinations(range(len(words)), 2):
        if sum(a != b for a, b in zip(words[i], words[j])) >= d:
            H.add_edge(i, j)
    return nx.max_weight_clique(H, weight=None)[1]
