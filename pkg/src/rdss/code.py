"""RDSS codes: representation, verification, exact capacity and counting bounds.

A code is a set of length-n words over ``{0..q-1}``; symbol ``i`` is the
content of vertex ``i``. It is an RDSS code for ``G`` when every symbol is a
function of the symbols on its neighborhood ``N(i)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable

import numpy as np

from . import config
from .config import Limits
from .errors import CapExceeded, FormatError, RDSSError
from .graph import Graph, members

Word = tuple[int, ...]


# --- words as integers -------------------------------------------------------
# Word (x_0, ..., x_{n-1}) <-> sum x_i q^(n-1-i); integer order is string order.

def word_index(word: Word, q: int) -> int:
    idx = 0
    for s in word:
        idx = idx * q + s
    return idx


def index_word(idx: int, q: int, n: int) -> Word:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        idx, out[i] = divmod(idx, q)
    return tuple(out)


def all_digits(q: int, n: int) -> np.ndarray:
    """Row ``s`` holds the digits of state ``s``; shape ``(q**n, n)``."""
    idx = np.arange(q**n, dtype=np.int64)
    out = np.empty((q**n, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        out[:, i] = idx % q
        idx //= q
    return out


def place_values(q: int, n: int) -> np.ndarray:
    return q ** np.arange(n - 1, -1, -1, dtype=np.int64)


def add_words(x: Word, y: Word, q: int) -> Word:
    return tuple((a + b) % q for a, b in zip(x, y))


def sub_words(x: Word, y: Word, q: int) -> Word:
    return tuple((a - b) % q for a, b in zip(x, y))


def word_str(word: Word, q: int) -> str:
    if q <= 10:
        return "".join(map(str, word))
    return ",".join(map(str, word))


def parse_word(text: str, q: int) -> Word:
    text = text.strip()
    if q > 10 or "," in text:
        return tuple(int(t) for t in text.split(","))
    return tuple(int(ch) for ch in text)


# --- Code ----------------------------------------------------------------------

@dataclass(frozen=True)
class Code:
    q: int
    n: int
    words: tuple[Word, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("alphabet size must be at least 2")
        ws = [tuple(int(s) for s in w) for w in self.words]
        if not ws:
            raise ValueError("a code must contain at least one word")
        for w in ws:
            if len(w) != self.n:
                raise ValueError(f"word {w} has length {len(w)}, expected {self.n}")
            if any(not 0 <= s < self.q for s in w):
                raise ValueError(f"word {w} has a symbol outside 0..{self.q - 1}")
        ordered = tuple(sorted(ws))
        if len(set(ordered)) != len(ordered):
            raise ValueError("duplicate codewords")
        object.__setattr__(self, "words", ordered)

    @classmethod
    def from_strings(cls, strings: Iterable[str], q: int = 2) -> "Code":
        words = [parse_word(s, q) for s in strings]
        return cls(q, len(words[0]) if words else 0, tuple(words))

    @classmethod
    def from_indices(cls, indices: Iterable[int], q: int, n: int) -> "Code":
        return cls(q, n, tuple(index_word(i, q, n) for i in indices))

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w):
        return tuple(w) in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_wordset")
        if s is None:
            s = frozenset(self.words)
            object.__setattr__(self, "_wordset", s)
        return s

    @property
    def dimension(self) -> float:
        return math.log(len(self.words), self.q)

    @property
    def dimension_bits(self) -> float:
        return math.log2(len(self.words))

    def indices(self) -> list[int]:
        return [word_index(w, self.q) for w in self.words]

    def strings(self) -> list[str]:
        return [word_str(w, self.q) for w in self.words]


def translate(C: Code, a: Word) -> Code:
    a = tuple(a)
    if len(a) != C.n:
        raise ValueError(f"shift has length {len(a)}, expected {C.n}")
    return Code(C.q, C.n, tuple(add_words(w, a, C.q) for w in C.words))


def min_distance(C: Code) -> int:
    """Minimum pairwise Hamming distance; ``n + 1`` for a single-word code."""
    if len(C) < 2:
        warnings.warn("single-word code: distance taken as n + 1 by convention", stacklevel=2)
        return C.n + 1
    arr = np.array(C.words, dtype=np.int64)
    best = C.n
    for i in range(len(arr) - 1):
        d = int((arr[i + 1:] != arr[i]).sum(axis=1).min())
        best = min(best, d)
    return best


def hamming(x: Word, y: Word) -> int:
    return sum(a != b for a, b in zip(x, y))


# --- verification ----------------------------------------------------------------

def confusable(G: Graph, x: Word, y: Word) -> bool:
    if len(x) != G.n or len(y) != G.n:
        raise ValueError("words must have length n")
    for i in range(G.n):
        if x[i] != y[i] and all(x[j] == y[j] for j in members(G.adjacency[i])):
            return True
    return False


@dataclass(frozen=True)
class RecoveryTables:
    """Per vertex, the map from neighborhood contents to the vertex symbol."""

    neighbors: tuple[tuple[int, ...], ...]
    maps: tuple[dict, ...]

    def recover(self, i: int, side) -> int:
        """``side`` is either a full word or a mapping ``j -> symbol`` over ``N(i)``."""
        key = tuple(side[j] for j in self.neighbors[i])
        return self.maps[i][key]

    def translated(self, shift: Word, q: int) -> "RecoveryTables":
        """Tables for ``C + shift`` (recovery commutes with translation)."""
        maps = []
        for i, nb in enumerate(self.neighbors):
            m = {}
            for key, sym in self.maps[i].items():
                k2 = tuple((s + shift[j]) % q for s, j in zip(key, nb))
                m[k2] = (sym + shift[i]) % q
            maps.append(m)
        return RecoveryTables(self.neighbors, tuple(maps))


@dataclass(frozen=True)
class Confusion:
    x: Word
    y: Word
    vertex: int


@dataclass(frozen=True)
class Verification:
    ok: bool
    tables: RecoveryTables | None = None
    witness: Confusion | None = None

    def __bool__(self):
        return self.ok


def verify_rdss(G: Graph, C: Code) -> Verification:
    """Check that no two codewords are confusable; build recovery tables if so."""
    if C.n != G.n:
        raise ValueError(f"code length {C.n} does not match graph order {G.n}")
    neighbors = tuple(tuple(members(G.adjacency[i])) for i in range(G.n))
    maps = []
    worst = None
    for i, nb in enumerate(neighbors):
        first: dict = {}
        table: dict = {}
        for w in C.words:
            key = tuple(w[j] for j in nb)
            if key not in table:
                table[key] = w[i]
                first[key] = w
            elif table[key] != w[i]:
                cand = (first[key], w, i)
                if worst is None or cand < worst:
                    worst = cand
        maps.append(table)
    if worst is not None:
        return Verification(False, witness=Confusion(*worst))
    return Verification(True, tables=RecoveryTables(neighbors, tuple(maps)))


# --- Q_q(G) and the confusion graph ------------------------------------------------

def q_support_masks(G: Graph) -> list[int]:
    """Nonzero supports S such that some i in S has no neighbor in S."""
    adj = G.adjacency
    out = []
    for S in range(1, 1 << G.n):
        T = S
        while T:
            low = T & -T
            i = low.bit_length() - 1
            if adj[i] & S == 0:
                out.append(S)
                break
            T ^= low
    return out


def q_set_words(G: Graph, q: int) -> list[Word]:
    """The difference set Q_q(G): x is confusable with y iff y - x lies in it."""
    out = []
    for S in q_support_masks(G):
        pos = members(S)
        for vals in product(range(1, q), repeat=len(pos)):
            w = [0] * G.n
            for p, v in zip(pos, vals):
                w[p] = v
            out.append(tuple(w))
    return sorted(out)


@dataclass(frozen=True)
class QSetResult:
    size: int
    turan_bound: float


def q_set_size(G: Graph, q: int, limits: Limits | None = None) -> QSetResult:
    cap = config.resolve(limits).state_cap
    if 2**G.n > cap:
        raise CapExceeded("q_set_size", 2**G.n, cap)
    size = sum((q - 1) ** S.bit_count() for S in q_support_masks(G))
    return QSetResult(size, G.n - math.log(size + 1, q))


@dataclass(frozen=True)
class DegreeBound:
    raw: float  # the closed form as printed: -log_q[(q-1) sum delta_i q^-(i+1)]
    corrected: float  # n - log_q(q^n * sum + 1), always <= the Turan bound
    union_bound: Fraction  # upper bound on |Q_q(G)|
    consistent: bool | None  # raw <= Turan bound (None if Turan not computed)


def degree_distribution_bound(G: Graph, q: int, turan: float | None = None) -> DegreeBound:
    """Degree-histogram relaxation of the Turan-type lower bound.

    Uses out-degrees, i.e. |N(i)|. Degree-0 vertices are included in the sum.
    """
    hist: dict[int, int] = {}
    for v in range(G.n):
        d = G.degree(v)
        hist[d] = hist.get(d, 0) + 1
    s = sum(Fraction((q - 1) * cnt, q ** (d + 1)) for d, cnt in hist.items())
    if s == 0:
        return DegreeBound(float(G.n), float(G.n), Fraction(0), True if turan is None else G.n <= turan + 1e-12)
    raw = -math.log(s.numerator, q) + math.log(s.denominator, q)
    ub = s * q**G.n
    corrected = G.n - math.log(float(ub) + 1, q)
    consistent = None if turan is None else raw <= turan + 1e-12
    return DegreeBound(raw, corrected, ub, consistent)


class _Digits:
    """Digit table and index arithmetic for F_q^n."""

    def __init__(self, q: int, n: int):
        self.q, self.n = q, n
        self.size = q**n
        self.digits = all_digits(q, n)
        self.place = place_values(q, n)

    def add(self, xs: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Indices of ``x + v`` for every state index in ``xs``."""
        if self.q == 2:
            return xs ^ int(v @ self.place)
        return ((self.digits[xs] + v) % self.q) @ self.place


def _check_states(q: int, n: int, limits: Limits | None, what: str):
    cap = config.resolve(limits).state_cap
    if q**n > cap:
        raise CapExceeded(what, q**n, cap)


def confusion_degrees(G: Graph, q: int, limits: Limits | None = None) -> list[int]:
    """Degree of every string in the confusion graph, straight from the definition."""
    _check_states(q, G.n, limits, "confusion_degrees")
    D = all_digits(q, G.n)
    nbrs = [set() for _ in range(q**G.n)]
    for i in range(G.n):
        nb = members(G.adjacency[i])
        groups: dict = {}
        for s in range(q**G.n):
            groups.setdefault(tuple(D[s, nb]), []).append(s)
        for group in groups.values():
            for x in group:
                for y in group:
                    if D[x, i] != D[y, i]:
                        nbrs[x].add(y)
    return [len(a) for a in nbrs]


def _independent_in_confusion(G: Graph, q: int, extra_forbidden: list[Word] = (), seed_code: Code | None = None,
                              upper: int | None = None) -> list[int]:
    """Maximum independent set of the confusion graph, containing the zero word.

    ``extra_forbidden`` adds more forbidden differences (used for distance
    constraints). Returns state indices.
    """
    digits = _Digits(q, G.n)
    forb = [np.array(v, dtype=np.int64) for v in q_set_words(G, q)]
    forb += [np.array(v, dtype=np.int64) for v in extra_forbidden]
    forb_idx = {int(v @ digits.place) for v in forb}
    cand = [s for s in range(1, digits.size) if s not in forb_idx]
    pos = np.full(digits.size, -1, dtype=np.int64)
    pos[cand] = np.arange(len(cand))
    cand_arr = np.array(cand, dtype=np.int64)
    adj = [0] * len(cand)
    if cand:
        for v in forb:
            ys = digits.add(cand_arr, v)
            py = pos[ys]
            for i, j in zip(range(len(cand)), py.tolist()):
                if j >= 0:
                    adj[i] |= 1 << j
    seed = 0
    if seed_code is not None:
        for s in seed_code.indices():
            if s != 0:
                seed |= 1 << int(pos[s])
    from .combinatorics import mis_bitset

    best = mis_bitset(adj, (1 << len(cand)) - 1, seed=seed, upper=None if upper is None else upper - 1)
    return [0] + [cand[i] for i in members(best)]


@dataclass(frozen=True)
class CapacityResult:
    code: Code
    dimension: float
    dimension_bits: float
    size: int


def capacity_exact(G: Graph, q: int, limits: Limits | None = None) -> CapacityResult:
    """Largest RDSS code, as a maximum independent set of the confusion graph."""
    _check_states(q, G.n, limits, "capacity_exact")
    from . import combinatorics as comb
    from . import constructions as cons

    lim = config.resolve(limits)
    seed, upper = None, None
    if G.n == 0:
        return CapacityResult(Code(q, 0, ((),)), 0.0, 0.0, 1)
    if G.directed:
        try:
            seed = cons.cycle_replication_code(G, q, limits)
        except CapExceeded:
            pass
        if G.n <= lim.subset_cap:
            upper = q ** len(comb.min_fvs(G, limits))
    else:
        seed = cons.matching_code(G, q, limits)
        if G.n <= lim.subset_cap:
            upper = q ** len(comb.min_vertex_cover(G, "exact", limits))
    states = _independent_in_confusion(G, q, seed_code=seed, upper=upper)
    code = Code.from_indices(states, q, G.n)
    return CapacityResult(code, code.dimension, code.dimension_bits, len(code))


def max_code_with_distance(G: Graph, q: int, d: int, limits: Limits | None = None) -> Code:
    """Largest RDSS code on G whose minimum distance is at least ``d``."""
    _check_states(q, G.n, limits, "max_code_with_distance")
    close = []
    for s in range(1, q**G.n):
        w = index_word(s, q, G.n)
        if sum(1 for x in w if x) < d:
            close.append(w)
    states = _independent_in_confusion(G, q, extra_forbidden=close)
    return Code.from_indices(states, q, G.n)


# --- bounds report ---------------------------------------------------------------------

@dataclass
class Bound:
    name: str
    kind: str  # "lower" | "upper"
    value: float
    witness: object = None
    note: str = ""

    def to_dict(self, q: int) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "value": self.value,
            "value_bits": self.value * math.log2(q),
            "witness": self.witness,
            "note": self.note,
        }


class InconsistentBounds(RDSSError):
    pass


@dataclass
class BoundsReport:
    q: int
    bounds: list[Bound] = field(default_factory=list)
    omitted: list[tuple[str, str]] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def lower(self) -> float:
        return max((b.value for b in self.bounds if b.kind == "lower"), default=0.0)

    @property
    def upper(self) -> float:
        return min((b.value for b in self.bounds if b.kind == "upper"), default=math.inf)

    def get(self, name: str) -> Bound | None:
        return next((b for b in self.bounds if b.name == name), None)

    def check(self):
        lows = [b for b in self.bounds if b.kind == "lower"]
        ups = [b for b in self.bounds if b.kind == "upper"]
        for lo in lows:
            for up in ups:
                if lo.value > up.value + 1e-9:
                    raise InconsistentBounds(f"lower bound {lo.name}={lo.value} exceeds upper bound {up.name}={up.value}")

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "interval": [self.lower, self.upper],
            "interval_bits": [self.lower * math.log2(self.q), self.upper * math.log2(self.q)],
            "bounds": [b.to_dict(self.q) for b in self.bounds],
            "omitted": [{"name": n, "reason": r} for n, r in self.omitted],
            "extras": self.extras,
        }


def bounds_report(G: Graph, q: int, limits: Limits | None = None) -> BoundsReport:
    """Collect every applicable lower/upper bound on CAP_q(G)."""
    from . import combinatorics as comb
    from . import constructions as cons
    from . import linear

    rep = BoundsReport(q)

    def attempt(name, fn):
        try:
            fn()
        except (CapExceeded, RDSSError) as exc:
            rep.omitted.append((name, str(exc)))

    iso = len(G.isolated_vertices())
    rep.bounds.append(Bound("trivial", "upper", float(G.n - iso), note="isolated vertices store constants"))

    if G.directed:
        def vd():
            cyc = comb.max_vertex_disjoint_cycles(G, limits)
            rep.bounds.append(Bound("vertex_disjoint_cycles", "lower", float(len(cyc)), [list(c) for c in cyc]))

        def fvs():
            s = comb.min_fvs(G, limits)
            rep.bounds.append(Bound("feedback_vertex_set", "upper", float(len(s)), sorted(s)))

        def packing():
            P = cons.fractional_cycle_packing(G, limits, balanced=False)
            rep.extras["fractional_cycle_packing"] = {
                "K": str(P.K),
                "note": "vector (per-vertex length p) capacity, not a scalar bound",
            }

        attempt("vertex_disjoint_cycles", vd)
        attempt("feedback_vertex_set", fvs)
        attempt("fractional_cycle_packing", packing)
    else:
        M = comb.max_matching(G)
        rep.bounds.append(Bound("matching", "lower", float(len(M)), sorted(M)))

        def vc():
            if G.n <= config.resolve(limits).subset_cap:
                s = comb.min_vertex_cover(G, "exact", limits)
                rep.bounds.append(Bound("vertex_cover", "upper", float(len(s)), sorted(s)))
            else:
                s = comb.min_vertex_cover(G, "approx")
                rep.bounds.append(Bound("vertex_cover", "upper", float(len(s)), sorted(s), note="approximate cover"))
                rep.omitted.append(("vertex_cover_exact", "subset cap exceeded; approximate cover used"))

        def cliques():
            mode = "exact" if G.n <= config.resolve(limits).subset_cap else "greedy"
            parts = comb.clique_partition(G, mode, limits)
            rep.bounds.append(Bound("clique_partition", "lower", float(G.n - len(parts)),
                                    [sorted(p) for p in parts], note=mode))

        attempt("vertex_cover", vc)
        attempt("clique_partition", cliques)

    def minrank():
        r = linear.minrank(G, q, limits)
        rep.bounds.append(Bound("minrank", "lower", float(G.n - r.rank), [list(row) for row in r.witness]))

    if linear.is_prime(q):
        attempt("minrank", minrank)
    else:
        rep.omitted.append(("minrank", f"q={q} is not prime"))

    turan = None

    def turan_bound():
        nonlocal turan
        res = q_set_size(G, q, limits)
        turan = res.turan_bound
        rep.bounds.append(Bound("turan", "lower", res.turan_bound, {"Q_size": res.size}))

    attempt("turan", turan_bound)
    db = degree_distribution_bound(G, q, turan)
    rep.bounds.append(Bound("degree_distribution", "lower", db.corrected,
                            {"union_bound_Q": str(db.union_bound)}, note="n - log_q(union bound + 1)"))
    rep.extras["degree_distribution_raw"] = {"value": db.raw, "consistent": db.consistent}
    if db.consistent:
        rep.bounds.append(Bound("degree_distribution_raw", "lower", db.raw, note="closed form as printed"))
    rep.check()
    return rep


# --- file format ------------------------------------------------------------------------

def serialize_code(C: Code) -> str:
    lines = [f"c rdss {C.n} {C.q} {len(C)}"]
    lines += C.strings()
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    header = None
    words: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            tok = line.split()
            if len(tok) != 5 or tok[:2] != ["c", "rdss"]:
                raise FormatError("expected header 'c rdss <n> <q> <count>'", lineno)
            try:
                header = tuple(int(t) for t in tok[2:])
            except ValueError:
                raise FormatError("header fields must be integers", lineno) from None
            continue
        n, q, _ = header
        try:
            w = parse_word(line, q)
        except ValueError:
            raise FormatError(f"bad codeword {line!r}", lineno) from None
        if len(w) != n or any(not 0 <= s < q for s in w):
            raise FormatError(f"codeword {line!r} does not fit n={n}, q={q}", lineno)
        words.append(w)
    if header is None:
        raise FormatError("missing header")
    n, q, count = header
    if len(words) != count:
        raise FormatError(f"header declares {count} codewords, found {len(words)}")
    try:
        return Code(q, n, tuple(words))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_code(path) -> Code:
    with open(path) as fh:
        return parse_code(fh.read())
