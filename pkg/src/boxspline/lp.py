"""Exact rational linear programming: dense two-phase simplex with Bland's rule.

The instances met here are tiny (a handful of variables, a few dozen rows),
so a dense exact tableau is fast enough.  Pivoting runs on gmpy2 rationals
when available; inputs and results are Fractions either way.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

try:  # gmpy2's mpq is a drop-in exact rational, several times faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = _Q(0)
_ONE = _Q(1)


def _q(v):
    tv = type(v)
    if tv is _Q:
        return v
    if tv is int:
        return _Q(v)
    if tv is Fraction:
        return _Q(v.numerator, v.denominator)
    return _Q(v)


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: list[Fraction] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(T, basis, r, c):
    row = T[r]
    pv = row[c]
    if pv != 1:
        inv = 1 / pv
        row = [v * inv if v else v for v in row]
        T[r] = row
    nz = [(j, v) for j, v in enumerate(row) if v]
    for i, other in enumerate(T):
        if i == r:
            continue
        f = other[c]
        if f:
            for j, v in nz:
                other[j] -= f * v
    basis[r] = c


def _simplex(T, basis, ncols, allowed):
    """Maximise the objective stored (negated) in the last row of T.

    T[-1][j] holds -reduced cost; an entering column has T[-1][j] < 0.
    Returns False when unbounded.
    """
    obj = T[-1]
    m = len(T) - 1
    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < 0 and allowed[j]:
                enter = j
                break
        if enter < 0:
            return True
        best = None
        leave = -1
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return False
        _pivot(T, basis, leave, enter)
        obj = T[-1]


def maximize(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
             A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
             free: bool | Sequence[int] = False) -> LPResult:
    """max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0 except ``free`` coordinates.

    ``free=True`` frees every coordinate.
    """
    n = len(c)
    if free is True:
        free_idx = set(range(n))
    elif free:
        free_idx = set(free)
    else:
        free_idx = set()
    # column layout: x_j (or x_j^+), then x_j^- for free j
    neg_cols = {j: n + k for k, j in enumerate(sorted(free_idx))}
    nv = n + len(neg_cols)

    def expand(row):
        out = [_q(v) for v in row] + [_ZERO] * len(neg_cols)
        for j, k in neg_cols.items():
            out[k] = -out[j]
        return out

    rows = []
    rhs = []
    kinds = []
    for row, b in zip(A_ub, b_ub):
        rows.append(expand(row))
        rhs.append(_q(b))
        kinds.append("ub")
    for row, b in zip(A_eq, b_eq):
        rows.append(expand(row))
        rhs.append(_q(b))
        kinds.append("eq")
    m = len(rows)
    n_slack = kinds.count("ub")
    # slack columns nv .. nv+n_slack-1, artificial columns after
    art_rows = [i for i in range(m) if kinds[i] == "eq" or rhs[i] < 0]
    n_art = len(art_rows)
    ncols = nv + n_slack + n_art
    T = []
    basis = [0] * m
    s = 0
    a = 0
    art_of_row = {}
    for i in range(m):
        full = rows[i] + [_ZERO] * (n_slack + n_art) + [rhs[i]]
        if kinds[i] == "ub":
            full[nv + s] = _ONE
            slack_col = nv + s
            s += 1
        else:
            slack_col = -1
        if rhs[i] < 0 or kinds[i] == "eq":
            if rhs[i] < 0:
                full = [-v for v in full]
            col = nv + n_slack + a
            full[col] = _ONE
            art_of_row[i] = col
            basis[i] = col
            a += 1
        else:
            basis[i] = slack_col
        T.append(full)

    allowed = [True] * ncols
    if n_art:
        # phase one: maximise -sum(artificials)
        obj = [_ZERO] * (ncols + 1)
        for i in art_rows:
            for j in range(ncols + 1):
                obj[j] -= T[i][j]
        for col in art_of_row.values():
            obj[col] = _ZERO
        T.append(obj)
        _simplex(T, basis, ncols, allowed)
        if T[-1][-1] != 0:
            return LPResult(INFEASIBLE)
        T.pop()
        art_start = nv + n_slack
        drop = []
        for i in range(m):
            if basis[i] >= art_start:
                col = next((j for j in range(art_start) if T[i][j] != 0), -1)
                if col < 0:
                    drop.append(i)
                else:
                    _pivot(T, basis, i, col)
        for i in reversed(drop):
            del T[i]
            del basis[i]
        for j in range(art_start, ncols):
            allowed[j] = False

    obj = [_ZERO] * (ncols + 1)
    cc = expand(c)
    for j in range(nv):
        obj[j] = -cc[j]
    for i, bcol in enumerate(basis):
        if bcol < nv and cc[bcol]:
            f = cc[bcol]
            row = T[i]
            for j in range(ncols + 1):
                if row[j]:
                    obj[j] += f * row[j]
    T.append(obj)
    if not _simplex(T, basis, ncols, allowed):
        return LPResult(UNBOUNDED)
    y = [_ZERO] * ncols
    for i, bcol in enumerate(basis):
        y[bcol] = T[i][-1]
    x = [_frac(y[j] - (y[neg_cols[j]] if j in neg_cols else 0)) for j in range(n)]
    return LPResult(OPTIMAL, _frac(T[-1][-1]), x)


def minimize(c: Sequence, *args, **kwargs) -> LPResult:
    res = maximize([-Fraction(v) for v in c], *args, **kwargs)
    if res.value is not None:
        res.value = -res.value
    return res


def feasible_point(A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                   A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                   free: bool | Sequence[int] = False) -> list[Fraction] | None:
    n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = maximize([0] * n, A_ub, b_ub, A_eq, b_eq, free)
    return res.x if res.status == OPTIMAL else None


def _solve_square(M, rhs):
    """Solve the nonsingular system M x = rhs exactly (Gauss-Jordan)."""
    n = len(M)
    R = [list(row) + [v] for row, v in zip(M, rhs)]
    for c in range(n):
        p = next(i for i in range(c, n) if R[i][c])
        R[c], R[p] = R[p], R[c]
        inv = 1 / R[c][c]
        R[c] = [v * inv for v in R[c]]
        for i in range(n):
            if i != c and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[c])]
    return [row[-1] for row in R]


def maximize_free(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    status, value, x = _maximize_free(c, A, b)
    if status != OPTIMAL:
        return LPResult(status)
    return LPResult(status, _frac(value), [_frac(v) for v in x])


def _maximize_free(c, A, b):
    """max c.x  s.t.  A x <= b  with every x_j free.

    Runs the simplex method on the dual (min b.y, A^T y = c, y >= 0), whose
    tableau has only len(c) rows; this pays off when there are many more
    constraints than variables.  The primal optimum is read off the final
    basis.  A dual that is infeasible is reported as UNBOUNDED and an
    unbounded dual as INFEASIBLE, so the caller must know that the primal is
    feasible or bounded when it needs to tell those two apart.
    """
    n = len(c)
    m = len(A)
    Aq = [[_q(v) for v in row] for row in A]
    bq = [_q(v) for v in b]
    cq = [_q(v) for v in c]
    ncols = m + n
    T = []
    basis = []
    for j in range(n):
        row = [Aq[i][j] for i in range(m)] + [_ZERO] * n + [cq[j]]
        if cq[j] < 0:
            row = [-v for v in row]
        row[m + j] = _ONE
        T.append(row)
        basis.append(m + j)
    allowed = [True] * ncols
    obj = [_ZERO] * (ncols + 1)
    for row in T:
        for k in range(ncols + 1):
            obj[k] -= row[k]
    for j in range(n):
        obj[m + j] = _ZERO
    T.append(obj)
    _simplex(T, basis, ncols, allowed)
    if T[-1][-1] != 0:
        return UNBOUNDED, None, None
    T.pop()
    for i in range(n):
        if basis[i] >= m:
            col = next((k for k in range(m) if T[i][k] != 0), -1)
            if col >= 0:
                _pivot(T, basis, i, col)
    for k in range(m, ncols):
        allowed[k] = False
    # phase two: maximise -b.y
    obj = [_ZERO] * (ncols + 1)
    for i in range(m):
        obj[i] = bq[i]
    for i, bcol in enumerate(basis):
        if bcol < m and bq[bcol]:
            f = bq[bcol]
            row = T[i]
            for k in range(ncols + 1):
                if row[k]:
                    obj[k] -= f * row[k]
    T.append(obj)
    if not _simplex(T, basis, ncols, allowed):
        return INFEASIBLE, None, None
    # simplex multipliers: tight primal constraints for basic y, x_j = 0 for leftover artificials
    M = []
    rhs = []
    for bcol in basis:
        if bcol < m:
            M.append(Aq[bcol])
            rhs.append(bq[bcol])
        else:
            M.append([_ONE if k == bcol - m else _ZERO for k in range(n)])
            rhs.append(_ZERO)
    return OPTIMAL, -T[-1][-1], _solve_square(M, rhs)
