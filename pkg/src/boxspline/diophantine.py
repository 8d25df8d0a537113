"""Counting non-negative solutions of Diophantine systems with non-negative coefficients."""
from __future__ import annotations

from dataclasses import dataclass, field

from .spline import BoundSpec, BoxSpline, bs_line_sum

EQ = "eq"
LE = "le"


class PreconditionError(ValueError):
    """A construction was asked for on input that violates its contract."""


@dataclass(frozen=True)
class DioSystem:
    """Rows ``matrix[i] . x + offsets[i]  (= or <=)  n_i`` in unknowns x in N^cols."""

    matrix: tuple[tuple[int, ...], ...]
    offsets: tuple[int, ...] = ()
    relations: tuple[str, ...] = ()
    cols: int = field(default=-1)

    def __post_init__(self):
        m = tuple(tuple(int(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        rows = len(m)
        if not rows:
            raise ValueError("a system needs at least one row")
        cols = self.cols if self.cols >= 0 else len(m[0])
        if any(len(r) != cols for r in m):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "cols", cols)
        offs = tuple(int(v) for v in self.offsets) or (0,) * rows
        rels = tuple(self.relations) or (EQ,) * rows
        if len(offs) != rows or len(rels) != rows:
            raise ValueError("offsets and relations need one entry per row")
        if any(r not in (EQ, LE) for r in rels):
            raise ValueError("relations must be 'eq' or 'le'")
        if any(v < 0 for row in m for v in row):
            raise PreconditionError("negative coefficient: only non-negative systems are supported")
        object.__setattr__(self, "offsets", offs)
        object.__setattr__(self, "relations", rels)

    @property
    def rows(self) -> int:
        return len(self.matrix)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.matrix)


def slackify(sys: DioSystem) -> DioSystem:
    """Turn every inequality row into an equation with its own unit slack column."""
    le_rows = [i for i, r in enumerate(sys.relations) if r == LE]
    if not le_rows:
        return sys
    matrix = []
    for i, row in enumerate(sys.matrix):
        extra = [int(i == k) for k in le_rows]
        matrix.append(tuple(row) + tuple(extra))
    return DioSystem(tuple(matrix), sys.offsets, (EQ,) * sys.rows, sys.cols + len(le_rows))


def count_system(sys: DioSystem) -> BoxSpline:
    """Box spline n -> #{x in N^k : matrix . x + offsets = n} over N^rows.

    Inequality rows are slackified first.  Columns are eliminated from the
    last to the first, each step summing along the column direction.
    """
    sys = slackify(sys)
    for j in range(sys.cols):
        if not any(sys.column(j)):
            raise PreconditionError(f"zero column {j + 1}: the count may be infinite")
    if any(v < 0 for v in sys.offsets):
        raise PreconditionError("negative offset")
    S = BoxSpline.point_indicator(sys.offsets)
    for j in reversed(range(sys.cols)):
        a = sys.column(j)
        S = bs_line_sum(S, a, BoundSpec.min_ratio(a))
    return S
