"""The vector partition function b -> #{X in N^n : A X = b} of a pointed integer matrix.

A is pointed when A X = 0 with X >= 0 forces X = 0; then every fibre is
finite, and in fact each coordinate of a solution is at most h_A * max_j |b_j|.
The partition function is built column by column, like the counting
function of a non-negative system, except that the summation range of the
eliminated unknown is the h_A bound, which depends on the signs of b and on
which |b_j| is largest.  Those comparisons are exactly the regions of
:func:`abs_arrangement`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .arrangement import INTEGER, Arrangement, Hyperplane
from .diophantine import PreconditionError
from .lp import OPTIMAL, feasible_point, minimize
from .poly import AffineForm
from .quasipoly import QuasiPolynomial
from .spline import BoundSpec, BoxSpline, PerRegionAffine, bs_line_sum


def _columns(A: Sequence[Sequence[int]]) -> list[list[int]]:
    t = len(A)
    n = len(A[0]) if t else 0
    return [[A[i][j] for i in range(t)] for j in range(n)]


def pointed_witness(A: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """A nonzero X >= 0 in Z^n with A X = 0, or None when A is pointed."""
    n = len(A[0]) if A else 0
    if n == 0:
        return None
    rows = [list(r) for r in A] + [[1] * n]
    rhs = [0] * len(A) + [1]
    x = feasible_point(A_eq=rows, b_eq=rhs)
    if x is None:
        return None
    d = 1
    for v in x:
        d = lcm(d, v.denominator)
    return tuple(int(v * d) for v in x)


def check_pointed(A: Sequence[Sequence[int]]) -> bool:
    """True iff the only X >= 0 with A X = 0 is X = 0 (decided by an exact LP)."""
    return pointed_witness(A) is None


def compute_hA(A: Sequence[Sequence[int]]) -> Fraction:
    """A constant h with X_i <= h * max_j |b_j| for every X >= 0 solving A X = b.

    For each i, any y with y A >= e_i gives X_i <= (y A) X = y . b <= |y|_1 max|b|;
    the smallest |y|_1 is a linear program (y = u - v with u, v >= 0).
    """
    t = len(A)
    cols = _columns(A)
    best = Fraction(0)
    for i in range(len(cols)):
        # variables u_1..u_t, v_1..v_t;  -(u - v).col_k <= -[k == i]
        A_ub = [[-c for c in col] + [c for c in col] for col in cols]
        b_ub = [-int(k == i) for k in range(len(cols))]
        res = minimize([1] * (2 * t), A_ub, b_ub)
        if res.status != OPTIMAL:
            raise PreconditionError(f"no dual certificate for unknown {i + 1}: the matrix is not pointed")
        best = max(best, res.value)
    return best


def abs_arrangement(t: int) -> Arrangement:
    """Planes b_i = 0 and b_i = +-b_j over Z^t: regions fix the signs of b and the largest |b_j|."""
    if t < 1:
        raise ValueError("t must be positive")
    planes = []
    for i in range(t):
        for j in range(i + 1, t):
            planes.append(Hyperplane(tuple(int(k == i) - int(k == j) for k in range(t))))
            planes.append(Hyperplane(tuple(int(k == i) + int(k == j) for k in range(t))))
    return Arrangement(t, planes, INTEGER)


def sign_and_argmax(point: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """(alpha, j0): alpha_i = sign of b_i (+1 at zero), j0 = first index of the largest |b_j|."""
    alpha = tuple(-1 if v < 0 else 1 for v in point)
    top = max(abs(v) for v in point)
    j0 = next(j for j, v in enumerate(point) if abs(v) == top)
    return alpha, j0


@dataclass(frozen=True)
class DMInstance:
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        if not m or not m[0]:
            raise ValueError("the matrix must have at least one row and one column")
        if any(len(r) != len(m[0]) for r in m):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def t(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.matrix[0])

    def suffix(self, j: int) -> tuple[tuple[int, ...], ...]:
        """Columns j..n-1 (0-based)."""
        return tuple(row[j:] for row in self.matrix)

    def require_pointed(self):
        w = pointed_witness(self.matrix)
        if w is not None:
            raise PreconditionError(
                f"pointedness condition violated: A X = 0 has the non-negative solution X = {list(w)}")

    @property
    def h(self) -> Fraction:
        return compute_hA(self.matrix)


def _bound(arr: Arrangement, h: Fraction) -> PerRegionAffine:
    t = arr.dim
    forms = {}
    for r in arr.regions():
        alpha, j0 = sign_and_argmax(r.point)
        coeffs = [Fraction(0)] * t
        coeffs[j0] = h * alpha[j0]
        forms[r.sign_vector] = AffineForm(coeffs, 0)
    return PerRegionAffine(arr, forms)


def build_CA(inst: DMInstance | Sequence[Sequence[int]]) -> BoxSpline:
    """The partition function of a pointed matrix as a box spline over Z^t."""
    if not isinstance(inst, DMInstance):
        inst = DMInstance(inst)
    inst.require_pointed()
    t, n = inst.t, inst.n
    arr = abs_arrangement(t)
    one = QuasiPolynomial.constant(t, 1)
    C = BoxSpline(arr, {"0" * len(arr.planes): one})
    for j in reversed(range(n)):
        sub = inst.suffix(j)
        # columns of a pointed matrix are pointed, so every suffix is too
        assert check_pointed(sub), "suffix of a pointed matrix is not pointed"
        h = compute_hA(sub)
        a = [row[j] for row in inst.matrix]
        C = bs_line_sum(C, a, BoundSpec(_bound(arr, h)))
    return C
