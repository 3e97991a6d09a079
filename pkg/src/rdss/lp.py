"""Dense two-phase simplex over exact rationals (Bland's rule, no cycling)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RDSSError


class Infeasible(RDSSError):
    pass


class Unbounded(RDSSError):
    pass


@dataclass
class LPResult:
    value: Fraction
    x: list[Fraction]


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int):
    row = T[r]
    pv = row[c]
    if pv != 1:
        T[r] = row = [v / pv for v in row]
    for i, other in enumerate(T):
        if i != r and other[c] != 0:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, obj_row: int, allowed: int):
    """Maximise the objective held in ``T[obj_row]`` (stored as reduced costs ``-c``)."""
    m = len(T) - 2
    while True:
        obj = T[obj_row]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return
        best = None
        for i in range(m):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise Unbounded("objective unbounded")
        _pivot(T, basis, best[1], col)


def maximize(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    """max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0."""
    c = [Fraction(v) for v in c]
    nv = len(c)
    rows = [([Fraction(v) for v in a], Fraction(b), "ub") for a, b in zip(A_ub, b_ub)]
    rows += [([Fraction(v) for v in a], Fraction(b), "eq") for a, b in zip(A_eq, b_eq)]
    n_slack = sum(1 for _, _, kind in rows if kind == "ub")
    needs_art = []
    for a, b, kind in rows:
        needs_art.append(kind == "eq" or b < 0)
    n_art = sum(needs_art)
    width = nv + n_slack + n_art
    T: list[list[Fraction]] = []
    basis: list[int] = []
    s = nv
    art = nv + n_slack
    for (a, b, kind), use_art in zip(rows, needs_art):
        row = a + [Fraction(0)] * (n_slack + n_art) + [b]
        slack_col = None
        if kind == "ub":
            slack_col = s
            row[s] = Fraction(1)
            s += 1
        if b < 0:
            row = [-v for v in row]
        if use_art:
            row[art] = Fraction(1)
            basis.append(art)
            art += 1
        else:
            basis.append(slack_col)
        T.append(row)
    # objective rows: phase 2 (-c) and phase 1 (maximise -sum(artificials))
    T.append([-v for v in c] + [Fraction(0)] * (n_slack + n_art) + [Fraction(0)])
    phase1 = [Fraction(0)] * (width + 1)
    for j in range(nv + n_slack, width):
        phase1[j] = Fraction(1)
    for i, b in enumerate(basis):
        if b >= nv + n_slack:
            phase1 = [p - v for p, v in zip(phase1, T[i])]
    T.append(phase1)
    m = len(rows)
    if n_art:
        _run(T, basis, m + 1, width)
        if T[m + 1][-1] != 0:
            raise Infeasible("no feasible point")
        # drive remaining artificials out of the basis
        for i in range(m):
            if basis[i] >= nv + n_slack:
                col = next((j for j in range(nv + n_slack) if T[i][j] != 0), None)
                if col is not None:
                    _pivot(T, basis, i, col)
        for row in T:
            for j in range(nv + n_slack, width):
                row[j] = Fraction(0)
    _run(T, basis, m, nv + n_slack)
    x = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        if b < nv:
            x[b] = T[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(value, x)
