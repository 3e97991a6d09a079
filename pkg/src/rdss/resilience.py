"""Multiple failures: cooperative 2-erasure repair and distance-aware dimension bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import combinatorics as comb
from . import config
from .code import Code, Word, index_word, verify_rdss
from .config import Limits
from .constructions import _replication_code
from .errors import CapExceeded
from .graph import Graph, members, neighborhood_mask


# --- cooperative repair ------------------------------------------------------------

@dataclass(frozen=True)
class CoopFailure:
    lost: tuple[int, ...]
    x: Word
    y: Word


@dataclass(frozen=True)
class CoopVerification:
    ok: bool
    t: int
    witness: CoopFailure | None = None

    def __bool__(self):
        return self.ok


def connected_subsets(G: Graph, t: int) -> list[int]:
    """Bitmasks of all connected vertex sets of size 1..t, in (size, mask) order."""
    found = {1 << v for v in range(G.n)}
    frontier = set(found)
    for _ in range(t - 1):
        grown = set()
        for S in frontier:
            for v in members(neighborhood_mask(G, S)):
                grown.add(S | 1 << v)
        grown -= found
        found |= grown
        frontier = grown
    return sorted(found, key=lambda S: (S.bit_count(), S))


def verify_cooperative(G: Graph, C: Code, t: int = 2) -> CoopVerification:
    """Every connected set of at most ``t`` lost vertices is determined by its outer neighborhood."""
    comb._need_undirected(G, "verify_cooperative")
    if t < 1:
        raise ValueError("t must be at least 1")
    if C.n != G.n:
        raise ValueError(f"code length {C.n} does not match graph order {G.n}")
    if t == 1:
        ver = verify_rdss(G, C)
        if ver.ok:
            return CoopVerification(True, 1)
        w = ver.witness
        return CoopVerification(False, 1, CoopFailure((w.vertex,), w.x, w.y))
    for U in connected_subsets(G, t):
        outside = members(neighborhood_mask(G, U))
        lost = members(U)
        seen: dict = {}
        for w in C.words:
            key = tuple(w[j] for j in outside)
            val = tuple(w[j] for j in lost)
            if key in seen and seen[key][0] != val:
                return CoopVerification(False, t, CoopFailure(tuple(lost), seen[key][1], w))
            seen.setdefault(key, (val, w))
    return CoopVerification(True, t)


def coop_upper_bound(G: Graph, limits: Limits | None = None) -> int:
    """Dimension cap for cooperative 2-erasure codes: size of a minimum 3-path vertex cover."""
    return G.n - len(comb.max_dissociation_set(G, limits))


@dataclass(frozen=True)
class CoopConstruction:
    code: Code
    packing: comb.PathPacking

    @property
    def dimension(self) -> int:
        return len(self.packing)


def coop_construct(G: Graph, q: int, limits: Limits | None = None) -> CoopConstruction:
    """Replicate one symbol on the three vertices of each packed 3-path; zero elsewhere."""
    packing = comb.vertex_disjoint_3paths(G, limits)
    code = _replication_code(G.n, q, [list(p) for p in packing.paths], limits)
    return CoopConstruction(code, packing)


# --- distance bounds --------------------------------------------------------------

@dataclass(frozen=True)
class DistanceBoundQuery:
    G: Graph
    k: int
    d: int
    q: int

    def __post_init__(self):
        if not 1 <= self.k <= self.G.n:
            raise ValueError(f"dimension k={self.k} outside 1..{self.G.n}")
        if self.d < 1:
            raise ValueError("distance must be at least 1")


def _check_enumerable(G: Graph, limits: Limits | None, what: str):
    cap = config.resolve(limits).state_cap
    if 2**G.n > cap:
        raise CapExceeded(what, 2**G.n, cap)


def repair_free_sets(G: Graph, limits: Limits | None = None) -> list[tuple[int, int]]:
    """(U, N(U)) for every independent set (undirected) or induced-acyclic set (directed), including the empty set."""
    _check_enumerable(G, limits, "independent/acyclic set enumeration")
    adj = G.adjacency
    out = []

    def grow(U: int, start: int):
        out.append((U, neighborhood_mask(G, U)))
        for v in range(start, G.n):
            W = U | 1 << v
            if G.directed:
                if not comb._acyclic(adj, W):
                    continue
            elif adj[v] & U:
                continue
            grow(W, v + 1)

    grow(0, 0)
    return out


def distance_upper_bound(Q: DistanceBoundQuery, limits: Limits | None = None) -> int:
    """Largest minimum distance compatible with dimension k: n - k + 1 - max |U| over repair-free U with |N(U)| <= k - 1."""
    best = max(U.bit_count() for U, N in repair_free_sets(Q.G, limits) if N.bit_count() <= Q.k - 1)
    return Q.G.n - Q.k + 1 - best


def locality_bound(n: int, k: int, r: int) -> int:
    """Regular-graph specialisation: d <= n - k - ceil(k / r) + 2."""
    return n - k - math.ceil(k / r) + 2


def _floor_log(x: int, q: int) -> int:
    e = 0
    while q ** (e + 1) <= x:
        e += 1
    return e


def alpha_bound(G: Graph, d: int, q: int, limits: Limits | None = None) -> int:
    """Integer dimension cap: min over repair-free U of |N(U)| + floor(log_q A_q(n - |U u N(U)|, d))."""
    best = None
    for U, N in repair_free_sets(G, limits):
        rest = G.n - (U | N).bit_count()
        val = N.bit_count() + _floor_log(aq_upper(rest, d, q, limits), q)
        best = val if best is None else min(best, val)
    return best


# --- A_q(n, d) --------------------------------------------------------------------

def singleton(n: int, d: int, q: int) -> int:
    return q ** max(n - d + 1, 0)


def sphere_packing(n: int, d: int, q: int) -> int:
    t = (d - 1) // 2
    ball = sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))
    return q**n // ball


def plotkin(n: int, d: int, q: int) -> int | None:
    """floor(d / (d - theta n)) with theta = 1 - 1/q, when d > theta n."""
    theta = 1 - Fraction(1, q)
    if d <= theta * n:
        return None
    return math.floor(d / (d - theta * n))


@lru_cache(maxsize=None)
def _aq_exact(n: int, d: int, q: int) -> int:
    far = [s for s in range(1, q**n) if sum(1 for x in index_word(s, q, n) if x) >= d]
    words = [index_word(s, q, n) for s in far]
    adj = []
    for x in words:
        a = 0
        for j, y in enumerate(words):
            if sum(1 for u, v in zip(x, y) if u != v) < d and x != y:
                a |= 1 << j
        adj.append(a)
    return 1 + comb.mis_bitset(adj, (1 << len(words)) - 1).bit_count()


def aq_upper(n: int, d: int, q: int, limits: Limits | None = None) -> int:
    """Upper bound on the largest q-ary code of length n and minimum distance d (exact when small)."""
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    if d == 1:
        return q**n
    if d > n:
        return 1
    if d == n:
        return q
    if d == 2:
        return q ** (n - 1)
    if q**n <= config.resolve(limits).aq_exact_cap:
        return _aq_exact(n, d, q)
    cands = [singleton(n, d, q), sphere_packing(n, d, q)]
    p = plotkin(n, d, q)
    if p is not None:
        cands.append(p)
    return min(cands)
