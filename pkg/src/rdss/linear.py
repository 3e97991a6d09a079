"""Linear machinery over prime fields: minrank, null-space codes, syndrome index codes."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import config
from .code import Code, Word
from .config import Limits
from .errors import CapExceeded, NotApplicable, RDSSError
from .graph import Graph, members

Matrix = tuple[tuple[int, ...], ...]


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def _need_prime(q: int):
    if not is_prime(q):
        raise NotApplicable(f"q={q} is not prime; only prime fields are supported")


# --- dense linear algebra mod p ------------------------------------------------

def row_reduce(rows, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [[v % p for v in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [v * inv % p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank_mod(rows, p: int) -> int:
    return len(row_reduce(rows, p)[1]) if rows else 0


def nullspace_mod(rows, ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    R, pivots = row_reduce(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = (-row[f]) % p
        basis.append(x)
    return basis


def solve_mod(A, b, p: int) -> list[int] | None:
    """One solution of A x = b over F_p, or None."""
    ncols = len(A[0]) if A else 0
    aug = [list(r) + [v] for r, v in zip(A, b)]
    if not aug:
        return [0] * ncols
    R, pivots = row_reduce(aug, p)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[-1]
    return x


def span_words(basis, p: int, n: int) -> list[Word]:
    out = []
    for coeffs in product(range(p), repeat=len(basis)):
        w = [0] * n
        for c, vec in zip(coeffs, basis):
            if c:
                for j in range(n):
                    w[j] = (w[j] + c * vec[j]) % p
        out.append(tuple(w))
    return out


# --- fitting matrices and minrank ------------------------------------------------

def fits(G: Graph, A, q: int) -> bool:
    if len(A) != G.n or any(len(r) != G.n for r in A):
        return False
    for i in range(G.n):
        for j in range(G.n):
            v = A[i][j] % q
            if i == j and v == 0:
                return False
            if i != j and v and not G.has_edge(i, j):
                return False
    return True


@dataclass(frozen=True)
class MinrankResult:
    rank: int
    witness: Matrix


class _Basis:
    """Incremental echelon basis; q == 2 uses integer bit rows."""

    def __init__(self, p: int):
        self.p = p
        self.rows: list = []

    def reduce(self, v):
        p = self.p
        if p == 2:
            for piv, r in self.rows:
                if v >> piv & 1:
                    v ^= r
            return v
        v = list(v)
        for piv, r in self.rows:
            f = v[piv]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, r)]
        return v

    def nonzero(self, v) -> bool:
        return bool(v) if self.p == 2 else any(v)

    def push(self, v):
        """Add an already-reduced nonzero vector."""
        p = self.p
        if p == 2:
            self.rows.append((v.bit_length() - 1, v))
        else:
            piv = next(i for i, a in enumerate(v) if a)
            inv = pow(v[piv], -1, p)
            self.rows.append((piv, [a * inv % p for a in v]))

    def pop(self):
        self.rows.pop()


def minrank(G: Graph, q: int, limits: Limits | None = None) -> MinrankResult:
    """Minimum rank over F_q of a matrix fitting G (diagonal normalised to 1)."""
    _need_prime(q)
    n = G.n
    if n == 0:
        return MinrankResult(0, ())
    free = [members(G.adjacency[i]) for i in range(n)]
    space = q ** sum(len(f) for f in free)
    cap = config.resolve(limits).minrank_cap
    if space > cap:
        raise CapExceeded(f"minrank search (identity gives minrank <= {n})", space, cap)

    def options(i):
        out = []
        for vals in product(range(q), repeat=len(free[i])):
            row = [0] * n
            row[i] = 1
            for j, v in zip(free[i], vals):
                row[j] = v
            out.append(row)
        return out

    opts = [options(i) for i in range(n)]

    def encode(row):
        if q == 2:
            return sum(1 << j for j, v in enumerate(row) if v)
        return row

    best_rank = [n]
    best_rows = [[[int(i == j) for j in range(n)] for i in range(n)]]
    basis = _Basis(q)
    chosen: list = []

    def dfs(i: int, rank: int):
        if rank >= best_rank[0]:
            return
        if i == n:
            best_rank[0] = rank
            best_rows[0] = [list(r) for r in chosen]
            return
        grow, stay = [], []
        for row in opts[i]:
            red = basis.reduce(encode(row))
            (grow if basis.nonzero(red) else stay).append((row, red))
        for row, _ in stay:
            chosen.append(row)
            dfs(i + 1, rank)
            chosen.pop()
            if best_rank[0] <= max(rank, 1):
                return
        if rank + 1 < best_rank[0]:
            for row, red in grow:
                chosen.append(row)
                basis.push(red)
                dfs(i + 1, rank + 1)
                basis.pop()
                chosen.pop()
                if rank + 1 >= best_rank[0]:
                    return

    dfs(0, 0)
    return MinrankResult(best_rank[0], tuple(tuple(r) for r in best_rows[0]))


def linear_rdss_from_fit(G: Graph, A, q: int, limits: Limits | None = None) -> Code:
    """The null space of a fitting matrix, enumerated as an RDSS code."""
    _need_prime(q)
    if not fits(G, A, q):
        raise NotApplicable("matrix does not fit the graph")
    basis = nullspace_mod([list(r) for r in A], G.n, q)
    cap = config.resolve(limits).state_cap
    if q ** len(basis) > cap:
        raise CapExceeded("linear_rdss_from_fit", q ** len(basis), cap)
    return Code(q, G.n, tuple(span_words(basis, q, G.n)))


def code_basis(C: Code) -> list[list[int]] | None:
    """A basis of C if C is a linear subspace of F_q^n, else None."""
    q = C.q
    if not is_prime(q):
        return None
    R, _ = row_reduce([list(w) for w in C.words], q)
    if q ** len(R) != len(C) or tuple([0] * C.n) not in C:
        return None
    for w in span_words(R, q, C.n):
        if w not in C:
            return None
    return R


# --- syndrome index code ---------------------------------------------------------

@dataclass(frozen=True)
class LinearIndexCode:
    """Index code whose encoder is the syndrome map ``y -> H y``."""

    q: int
    n: int
    H: Matrix
    neighbors: tuple[tuple[int, ...], ...]
    syndrome_coeffs: tuple[tuple[int, ...], ...]  # lambda_i with (lambda_i H)_i = 1
    side_coeffs: tuple[tuple[int, ...], ...]  # (lambda_i H)_j for j in N(i)

    @property
    def length(self) -> float:
        return float(len(self.H))

    @property
    def symbols(self) -> int:
        return len(self.H)

    def encode(self, y) -> tuple[int, ...]:
        q = self.q
        return tuple(sum(h * v for h, v in zip(row, y)) % q for row in self.H)

    def decode(self, i: int, label, side) -> int:
        q = self.q
        acc = sum(l * s for l, s in zip(self.syndrome_coeffs[i], label))
        acc -= sum(c * side[j] for c, j in zip(self.side_coeffs[i], self.neighbors[i]))
        return acc % q


def syndrome_index_code(G: Graph, C: Code) -> LinearIndexCode:
    """Index code sending the coset (syndrome) of y with respect to a linear RDSS code C."""
    basis = code_basis(C)
    if basis is None:
        raise NotApplicable("code is not a linear subspace over a prime field")
    q, n = C.q, C.n
    H = nullspace_mod(basis, n, q) if basis else [[int(i == j) for j in range(n)] for i in range(n)]
    neighbors = tuple(tuple(members(G.adjacency[i])) for i in range(n))
    lam_all, side_all = [], []
    for i in range(n):
        allowed = set(neighbors[i]) | {i}
        # lambda^T H must vanish outside {i} u N(i) and equal 1 at i
        eqs, rhs = [], []
        for j in range(n):
            if j not in allowed:
                eqs.append([H[r][j] for r in range(len(H))])
                rhs.append(0)
        eqs.append([H[r][i] for r in range(len(H))])
        rhs.append(1)
        if not H:
            raise RDSSError("empty parity-check matrix cannot decode")
        lam = solve_mod(eqs, rhs, q)
        if lam is None:
            raise NotApplicable(f"code is not recoverable at vertex {i}")
        w = [sum(l * H[r][j] for r, l in enumerate(lam)) % q for j in range(n)]
        lam_all.append(tuple(lam))
        side_all.append(tuple(w[j] for j in neighbors[i]))
    return LinearIndexCode(q, n, tuple(tuple(r) for r in H), neighbors, tuple(lam_all), tuple(side_all))
