"""RDSS codes <-> index codes.

An RDSS code C is turned into an index code by covering F_q^n with translates
C + x, x ranging over the binary span of a few generators found greedily; the
broadcast is the (binary) label of a translate containing the input. The
converse direction takes the largest fibre of an index-code encoder.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import config
from .code import Code, RecoveryTables, Word, all_digits, index_word, place_values, verify_rdss, word_index
from .config import Limits
from .errors import CapExceeded, NotApplicable, VerificationError
from .graph import Graph, members


def _as_index_set(F: Iterable, q: int) -> set[int]:
    return {word_index(tuple(w), q) for w in F}


def q_uncovered(F: Iterable, q: int, n: int) -> Fraction:
    """Fraction of F_q^n not covered by ``F``."""
    return 1 - Fraction(len(_as_index_set(F, q)), q**n)


def generator_bound(q: int, n: int, size: int) -> int:
    """Generator count guaranteed to suffice for covering F_q^n by translates of a size-``size`` set."""
    inner = min(n * math.log(q), math.log(math.e * size))
    return math.ceil(math.log2(q**n / size) + math.log2(inner) - 1e-12)


def index_length_bound(q: int, n: int, size: int) -> float:
    """n - k + log_q(min{n ln q, 1 + k ln q}) with k = log_q(size)."""
    k = math.log(size, q)
    return n - k + math.log(min(n * math.log(q), 1 + k * math.log(q)), q)


@dataclass(frozen=True)
class CoveringFamily:
    q: int
    n: int
    generators: tuple[Word, ...]
    trajectory: tuple[Fraction, ...]  # Q(F_t) after each greedy step, starting at F_0

    @property
    def ell(self) -> int:
        return len(self.generators)

    def translate_for(self, label: int) -> Word:
        """Sum of the generators selected by the binary digits of ``label``."""
        x = [0] * self.n
        for k, d in enumerate(self.generators):
            if label >> k & 1:
                x = [(a + b) % self.q for a, b in zip(x, d)]
        return tuple(x)

    def span(self) -> list[Word]:
        """Binary span in label order (may repeat when q > 2)."""
        return [self.translate_for(a) for a in range(1 << self.ell)]

    def distinct_span(self) -> set[Word]:
        return set(self.span())

    def covers(self, C: Code) -> bool:
        q, n = self.q, self.n
        covered = set()
        for x in self.distinct_span():
            for c in C.words:
                covered.add(tuple((a + b) % q for a, b in zip(c, x)))
        return len(covered) == q**n


class _Space:
    def __init__(self, q: int, n: int):
        self.q, self.n = q, n
        self.size = q**n
        self.digits = all_digits(q, n)
        self.place = place_values(q, n)

    def minus(self, zs: np.ndarray) -> np.ndarray:
        """Row r: index of x - zs[r] for every x."""
        if self.q == 2:
            return np.arange(self.size)[None, :] ^ zs[:, None]
        diff = (self.digits[None, :, :] - self.digits[zs][:, None, :]) % self.q
        return diff @ self.place


def greedy_covering(C: Code, limits: Limits | None = None, chunk: int = 256) -> CoveringFamily:
    """Greedily double the covered set: F <- F u (F + z) with the best z each step."""
    q, n = C.q, C.n
    cap = config.resolve(limits).covering_cap
    if q**n > cap:
        raise CapExceeded("greedy_covering", q**n, cap)
    space = _Space(q, n)
    F = np.zeros(space.size, dtype=bool)
    F[C.indices()] = True
    gens: list[Word] = []
    traj = [1 - Fraction(int(F.sum()), space.size)]
    while not F.all():
        best_z, best_count = -1, -1
        for start in range(0, space.size, chunk):
            zs = np.arange(start, min(start + chunk, space.size))
            counts = (F[None, :] | F[space.minus(zs)]).sum(axis=1)
            j = int(np.argmax(counts))
            if counts[j] > best_count:
                best_z, best_count = int(zs[j]), int(counts[j])
        F = F | F[space.minus(np.array([best_z]))[0]]
        gens.append(index_word(best_z, q, n))
        traj.append(1 - Fraction(int(F.sum()), space.size))
    return CoveringFamily(q, n, tuple(gens), tuple(traj))


# --- index codes -----------------------------------------------------------------------

@dataclass
class CoveringIndexCode:
    """Index code built from an RDSS code and a covering family of its translates.

    Decoding needs only the generators and the recovery tables of C: the label's
    binary digits give the translate x', and vertex i applies the recovery
    function of C + x'.
    """

    q: int
    n: int
    code: Code
    tables: RecoveryTables
    family: CoveringFamily
    labels: np.ndarray  # encoder table, indexed by input state

    @property
    def length(self) -> float:
        """Exact length in q-ary symbols: log_q of the number of distinct translates."""
        return math.log(len(self.family.distinct_span()), self.q)

    @property
    def symbols(self) -> int:
        """Transmitted q-ary symbols (ceiling of the exact length)."""
        D = len(self.family.distinct_span())
        L = 0
        while self.q**L < D:
            L += 1
        return L

    @property
    def label_bits(self) -> int:
        return self.family.ell

    def encode(self, y) -> int:
        return int(self.labels[word_index(tuple(y), self.q)])

    def decode(self, i: int, label: int, side) -> int:
        x = self.family.translate_for(label)
        nb = self.tables.neighbors[i]
        key = tuple((side[j] - x[j]) % self.q for j in nb)
        return (self.tables.maps[i][key] + x[i]) % self.q


def index_from_rdss(G: Graph, C: Code, D: CoveringFamily | None = None,
                    limits: Limits | None = None) -> CoveringIndexCode:
    """Index code whose broadcast names a translate of C containing the input."""
    ver = verify_rdss(G, C)
    if not ver.ok:
        raise NotApplicable(f"code is not an RDSS code for the graph: {ver.witness}")
    if D is None:
        D = greedy_covering(C, limits)
    q, n = C.q, C.n
    cap = config.resolve(limits).state_cap
    if q**n > cap:
        raise CapExceeded("index_from_rdss", q**n, cap)
    space = _Space(q, n)
    inC = np.zeros(space.size, dtype=bool)
    inC[C.indices()] = True
    labels = np.full(space.size, -1, dtype=np.int64)
    for a in range(1 << D.ell):
        x = np.array(D.translate_for(a), dtype=np.int64)
        xi = int(x @ space.place)
        hit = inC[space.minus(np.array([xi]))[0]] & (labels < 0)
        labels[hit] = a
        if (labels >= 0).all():
            break
    if (labels < 0).any():
        missing = index_word(int(np.argmax(labels < 0)), q, n)
        raise VerificationError(f"input {missing} is not covered by the family")
    return CoveringIndexCode(q, n, C, ver.tables, D, labels)


def round_trip(G: Graph, I, limits: Limits | None = None) -> bool:
    """Every receiver decodes its own symbol, for every input in F_q^n."""
    cap = config.resolve(limits).state_cap
    if I.q**I.n > cap:
        raise CapExceeded("round_trip", I.q**I.n, cap)
    nbrs = [members(G.adjacency[i]) for i in range(G.n)]
    for s in range(I.q**I.n):
        y = index_word(s, I.q, I.n)
        label = I.encode(y)
        for i in range(I.n):
            side = {j: y[j] for j in nbrs[i]}
            if I.decode(i, label, side) != y[i]:
                return False
    return True


def rdss_from_index(G: Graph, I, limits: Limits | None = None) -> Code:
    """Largest encoder fibre of an index code; its members are pairwise non-confusable."""
    cap = config.resolve(limits).state_cap
    if I.q**I.n > cap:
        raise CapExceeded("rdss_from_index", I.q**I.n, cap)
    fibres: dict = {}
    for s in range(I.q**I.n):
        y = index_word(s, I.q, I.n)
        fibres.setdefault(I.encode(y), []).append(y)
    best = max(fibres.values(), key=len)  # first maximal fibre in input order
    code = Code(I.q, I.n, tuple(best))
    if not verify_rdss(G, code).ok:
        raise VerificationError("index code fibre is not an RDSS code; index code invalid")
    return code


# --- counting identities -------------------------------------------------------------

def bassalygo_elias_check(C: Iterable, B: Iterable, q: int, n: int) -> bool:
    """sum_x |(C + x) n B| == |C| |B|, by direct summation over all shifts."""
    C = [tuple(w) for w in C]
    Bset = {tuple(w) for w in B}
    total = 0
    for s in range(q**n):
        x = index_word(s, q, n)
        total += sum(1 for c in C if tuple((a + b) % q for a, b in zip(c, x)) in Bset)
    return total == len(set(C)) * len(Bset)


def q_recursion_check(F: Iterable, q: int, n: int) -> bool:
    """q^-n sum_x Q(F u (F + x)) == Q(F)^2, in exact rationals."""
    F = {tuple(w) for w in F}
    N = q**n
    acc = Fraction(0)
    for s in range(N):
        x = index_word(s, q, n)
        shifted = {tuple((a + b) % q for a, b in zip(f, x)) for f in F}
        acc += 1 - Fraction(len(F | shifted), N)
    return acc / N == (1 - Fraction(len(F), N)) ** 2


# --- file format ---------------------------------------------------------------------

def serialize_covering(D: CoveringFamily) -> str:
    from .code import word_str

    return "\n".join([f"g {D.ell}"] + [word_str(g, D.q) for g in D.generators]) + "\n"


def parse_covering(text: str, q: int) -> CoveringFamily:
    from .code import parse_word
    from .errors import FormatError

    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("g "):
        raise FormatError("expected header 'g <ell>'", 1)
    ell = int(lines[0].split()[1])
    gens = tuple(parse_word(ln, q) for ln in lines[1:])
    if len(gens) != ell:
        raise FormatError(f"header declares {ell} generators, found {len(gens)}")
    n = len(gens[0]) if gens else 0
    return CoveringFamily(q, n, gens, ())
