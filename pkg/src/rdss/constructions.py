"""Constructive RDSS codes: replication on matchings, cycles, cliques, and the
vector code driven by a fractional cycle packing."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import combinatorics as comb
from . import config
from .code import Code
from .config import Limits
from .errors import CapExceeded, FormatError, NotApplicable, VerificationError
from .graph import Graph
from .lp import maximize


def _replication_code(n: int, q: int, groups, limits: Limits | None, parity: bool = False) -> Code:
    """One free symbol per group replicated on the group (or t-1 symbols + parity)."""
    slots = sum(len(g) - 1 if parity else 1 for g in groups)
    cap = config.resolve(limits).state_cap
    if q**slots > cap:
        raise CapExceeded("code enumeration", q**slots, cap)
    words = []
    for msg in product(range(q), repeat=slots):
        w = [0] * n
        k = 0
        for g in groups:
            g = sorted(g)
            if parity:
                free = msg[k:k + len(g) - 1]
                k += len(g) - 1
                for v, s in zip(g, free):
                    w[v] = s
                w[g[-1]] = -sum(free) % q
            else:
                for v in g:
                    w[v] = msg[k]
                k += 1
        words.append(tuple(w))
    return Code(q, n, tuple(words))


def matching_code(G: Graph, q: int, limits: Limits | None = None) -> Code:
    """Store one symbol on both ends of every edge of a maximum matching."""
    M = sorted(comb.max_matching(G))
    return _replication_code(G.n, q, M, limits)


def cycle_replication_code(G: Graph, q: int, limits: Limits | None = None) -> Code:
    """Replicate one symbol around each cycle of a maximum vertex-disjoint family."""
    cycles = comb.max_vertex_disjoint_cycles(G, limits)
    return _replication_code(G.n, q, cycles, limits)


def clique_partition_code(G: Graph, q: int, mode: str = "exact", limits: Limits | None = None) -> Code:
    """t-1 free symbols plus a zero-sum parity on every clique of size t."""
    parts = comb.clique_partition(G, mode, limits)
    return _replication_code(G.n, q, parts, limits, parity=True)


# --- fractional cycle packing -------------------------------------------------

@dataclass(frozen=True)
class CyclePacking:
    cycles: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...]
    K: Fraction
    p: int
    multiplicities: tuple[int, ...]

    def load(self, v: int) -> Fraction:
        return sum((w for c, w in zip(self.cycles, self.weights) if v in c), Fraction(0))

    def check(self, n: int):
        for v in range(n):
            if self.load(v) > 1:
                raise VerificationError(f"vertex {v} has load {self.load(v)} > 1")
        if any(Fraction(m, self.p) != w for m, w in zip(self.multiplicities, self.weights)):
            raise VerificationError("multiplicities do not match weights")
        if sum(self.multiplicities) != self.p * self.K:
            raise VerificationError("multiplicities do not sum to pK")


def _load_rows(n: int, cycles) -> list[list[int]]:
    return [[int(v in c) for c in cycles] for v in range(n)]


def _balanced(n: int, cycles, K: Fraction):
    """Among optimal packings, one maximising the smallest weight on the optimal support."""
    m = len(cycles)
    loads = _load_rows(n, cycles)
    # support of the optimal face, via the homogenised program
    #   vars: phi' (m), lam (1), y (m);  max sum y
    #   A phi' - lam <= 0,  y - phi' <= 0,  y <= 1,  sum phi' - K lam = 0
    nv = 2 * m + 1
    A_ub, b_ub = [], []
    for row in loads:
        A_ub.append(row + [-1] + [0] * m)
        b_ub.append(0)
    for j in range(m):
        r = [0] * nv
        r[j] = -1
        r[m + 1 + j] = 1
        A_ub.append(r)
        b_ub.append(0)
        r = [0] * nv
        r[m + 1 + j] = 1
        A_ub.append(r)
        b_ub.append(1)
    eq = [1] * m + [-K] + [0] * m
    res = maximize([0] * (m + 1) + [1] * m, A_ub, b_ub, [eq], [0])
    support = [j for j in range(m) if res.x[m + 1 + j] == 1]
    # maximise t subject to phi_C >= t on the support
    s = len(support)
    A_ub, b_ub = [], []
    for row in loads:
        A_ub.append([row[j] for j in support] + [0])
        b_ub.append(1)
    for k in range(s):
        r = [0] * (s + 1)
        r[k] = -1
        r[s] = 1
        A_ub.append(r)
        b_ub.append(0)
    res = maximize([0] * s + [1], A_ub, b_ub, [[1] * s + [0]], [K])
    phi = [Fraction(0)] * m
    for k, j in enumerate(support):
        phi[j] = res.x[k]
    return phi


def fractional_cycle_packing(G: Graph, limits: Limits | None = None, balanced: bool = True,
                             balance_cap: int = 64) -> CyclePacking:
    """Exact optimum of  max sum phi(C)  s.t. per-vertex load <= 1.

    Columns are the induced cycles (a chord closes a shorter cycle on fewer
    vertices, so the optimum value is unchanged). With ``balanced`` the
    optimum is tie-broken towards equal weights on the optimal support; this
    is skipped above ``balance_cap`` columns.
    """
    cycles = [c for c in comb.enumerate_cycles(G, limits) if comb._is_induced_cycle(G, c)]
    if not cycles:
        return CyclePacking((), (), Fraction(0), 1, ())
    loads = _load_rows(G.n, cycles)
    res = maximize([1] * len(cycles), loads, [1] * G.n)
    K = res.value
    phi = res.x
    if balanced and len(cycles) <= balance_cap:
        phi = _balanced(G.n, cycles, K)
    keep = [j for j, w in enumerate(phi) if w > 0]
    cycles = [cycles[j] for j in keep]
    phi = [phi[j] for j in keep]
    p = math.lcm(*(w.denominator for w in phi)) if phi else 1
    mult = [int(w * p) for w in phi]
    P = CyclePacking(tuple(cycles), tuple(phi), K, p, tuple(mult))
    P.check(G.n)
    return P


# --- the vector code ---------------------------------------------------------------

@dataclass(frozen=True)
class VectorCode:
    """Vector-linear RDSS code: each cycle's coordinates are copied on all its vertices."""

    q: int
    n: int
    p: int
    K: Fraction
    cycles: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]

    @property
    def message_length(self) -> int:
        return sum(self.multiplicities)

    def coordinates(self) -> list[range]:
        out, start = [], 0
        for m in self.multiplicities:
            out.append(range(start, start + m))
            start += m
        return out

    def layout(self, v: int) -> list[tuple[int, range]]:
        """(cycle index, message coordinates) stored on ``v``, in storage order."""
        coords = self.coordinates()
        return [(k, coords[k]) for k, c in enumerate(self.cycles) if v in c]

    def storage(self, v: int) -> int:
        return sum(len(r) for _, r in self.layout(v))

    def store(self, message) -> list[tuple[int, ...]]:
        if len(message) != self.message_length:
            raise ValueError("message length mismatch")
        return [tuple(message[i] for _, r in self.layout(v) for i in r) for v in range(self.n)]

    def repair(self, v: int, contents: list[tuple[int, ...]], G: Graph | None = None) -> tuple[int, ...]:
        """Rebuild ``contents[v]`` from the successor of ``v`` on each of its cycles."""
        out = []
        for k, r in self.layout(v):
            cyc = self.cycles[k]
            succ = cyc[(cyc.index(v) + 1) % len(cyc)]
            if G is not None and not G.has_edge(v, succ):
                raise VerificationError(f"{succ} is not a repair source of {v}")
            offset = 0
            for k2, r2 in self.layout(succ):
                if k2 == k:
                    break
                offset += len(r2)
            out.extend(contents[succ][offset:offset + len(r)])
        return tuple(out)

    def check_repair(self, G: Graph, trials: int = 1000, seed: int = 0) -> bool:
        rng = random.Random(seed)
        for _ in range(trials):
            msg = [rng.randrange(self.q) for _ in range(self.message_length)]
            contents = self.store(msg)
            for v in range(self.n):
                damaged = list(contents)
                damaged[v] = None
                if self.repair(v, damaged, G) != contents[v]:
                    return False
        return True


def vector_code_from_packing(G: Graph, P: CyclePacking, q: int) -> VectorCode:
    P.check(G.n)
    for c in P.cycles:
        if not comb.is_cycle(G, c):
            raise NotApplicable(f"{c} is not a directed cycle of the graph")
    code = VectorCode(q, G.n, P.p, P.K, P.cycles, P.multiplicities)
    if any(code.storage(v) > P.p for v in range(G.n)):
        raise VerificationError("per-vertex storage exceeds p")
    return code


def serialize_vector_code(V: VectorCode) -> str:
    lines = [f"v rdss {V.n} {V.q} {V.p} {V.K.numerator} {V.K.denominator}"]
    for c, m in zip(V.cycles, V.multiplicities):
        lines.append("cyc " + " ".join(map(str, (m,) + tuple(c))))
    return "\n".join(lines) + "\n"


def parse_vector_code(text: str) -> VectorCode:
    header = None
    cycles, mult = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if header is None:
            if len(tok) != 7 or tok[:2] != ["v", "rdss"]:
                raise FormatError("expected header 'v rdss <n> <q> <p> <K-num> <K-den>'", lineno)
            header = tuple(int(t) for t in tok[2:])
            continue
        if tok[0] != "cyc" or len(tok) < 4:
            raise FormatError("expected 'cyc <n(C)> <v0> <v1> ...'", lineno)
        vals = [int(t) for t in tok[1:]]
        mult.append(vals[0])
        cycles.append(tuple(vals[1:]))
    if header is None:
        raise FormatError("missing header")
    n, q, p, kn, kd = header
    return VectorCode(q, n, p, Fraction(kn, kd), tuple(cycles), tuple(mult))
