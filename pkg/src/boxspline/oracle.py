"""Brute-force counters and the differential-test harness."""
from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Callable, Sequence

from .diophantine import EQ, DioSystem, PreconditionError


def oracle_count_nonneg(sys: DioSystem, n: Sequence[int]) -> int:
    """Depth-first count of x in N^k with matrix . x + offsets = n (all rows equations)."""
    if any(r != EQ for r in sys.relations):
        raise ValueError("the oracle expects an all-equation system")
    for j in range(sys.cols):
        if not any(sys.column(j)):
            raise PreconditionError(f"zero column {j + 1}")
    rest = tuple(n_i - c for n_i, c in zip(n, sys.offsets))
    if any(v < 0 for v in rest):
        return 0
    if sys.cols == 0:
        return int(not any(rest))
    return _searcher(sys)(0, rest)


@lru_cache(maxsize=32)
def _searcher(sys: DioSystem):
    """The search for one system; sub-counts are shared between calls on a grid."""
    k = sys.cols
    cols = [sys.column(j) for j in range(k)]

    @lru_cache(maxsize=None)
    def go(j, rest):
        col = cols[j]
        if j == k - 1:
            # the last unknown is forced by any row where its column is nonzero
            i = next(i for i, c in enumerate(col) if c)
            if rest[i] % col[i]:
                return 0
            x = rest[i] // col[i]
            return int(all(r == x * c for r, c in zip(rest, col)))
        top = min(rest[i] // col[i] for i in range(len(col)) if col[i])
        total = 0
        for x in range(top + 1):
            total += go(j + 1, tuple(r - x * c for r, c in zip(rest, col)))
        return total

    return go


def oracle_count_pointed(A: Sequence[Sequence[int]], b: Sequence[int], h: Fraction) -> int:
    """Count X in N^n with A X = b, searching the box [0, floor(h * max|b_j|)]^n."""
    t = len(A)
    n = len(A[0]) if t else 0
    top = floor(Fraction(h) * max((abs(v) for v in b), default=0))
    if n == 0:
        return int(not any(b))
    cols = [[A[i][j] for i in range(t)] for j in range(n)]

    def go(j, rest):
        if j == n - 1:
            # the last unknown is forced by any row where its column is nonzero
            col = cols[j]
            x = None
            for c, r in zip(col, rest):
                if c:
                    if r % c:
                        return 0
                    x = r // c
                    break
            if x is None:
                return int(not any(rest)) * (top + 1)
            if not 0 <= x <= top:
                return 0
            return int(all(r == x * c for r, c in zip(rest, col)))
        total = 0
        for x in range(top + 1):
            total += go(j + 1, [r - x * c for r, c in zip(rest, cols[j])])
        return total

    return go(0, list(b))


@dataclass
class DiffReport:
    instance: str
    bound: int
    checked_points: int = 0
    mismatches: list[tuple[tuple[int, ...], Fraction, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        from .serialize import rational_to_str
        return {
            "instance": self.instance,
            "bound": self.bound,
            "checked_points": self.checked_points,
            "mismatches": [{"point": list(p), "symbolic": rational_to_str(s), "oracle": rational_to_str(o)}
                           for p, s, o in self.mismatches],
        }


def grid(dim: int, bound: int, natural: bool):
    rng = range(0, bound + 1) if natural else range(-bound, bound + 1)
    return itertools.product(rng, repeat=dim)


def compare_on_grid(instance: str, symbolic: Callable, oracle: Callable, dim: int, bound: int,
                    natural: bool = True, jobs: int = 1) -> DiffReport:
    points = list(grid(dim, bound, natural))
    report = DiffReport(instance, bound)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(jobs) as ex:
            vals = list(ex.map(lambda p: (p, Fraction(symbolic(p)), Fraction(oracle(p))), points))
    else:
        vals = [(p, Fraction(symbolic(p)), Fraction(oracle(p))) for p in points]
    for p, s, o in vals:
        report.checked_points += 1
        if s != o:
            report.mismatches.append((p, s, o))
    report.mismatches.sort(key=lambda m: m[0])
    return report


class ContractViolation(ValueError):
    """Input promised a property (here: disjoint pieces) that does not hold."""


def oracle_growth(X, spec, eta: Sequence[int]) -> int:
    """Scan the box |x_i| = eta_i (i <= t1), |x_i| <= eta_i (i > t1) and test membership."""
    from .semilinear import membership
    if len(eta) != X.dim or spec.dim != X.dim:
        raise ValueError("dimension mismatch")
    natural = X.lattice == "N"
    axes = []
    for i, e in enumerate(eta):
        if e < 0:
            return 0
        if i < spec.t1:
            axes.append(sorted({e, -e}) if not natural else [e])
        else:
            axes.append(range(0, e + 1) if natural else range(-e, e + 1))
    count = 0
    for x in itertools.product(*axes):
        hits = sum(1 for s in X.pieces if membership(s, x))
        if hits > 1:
            raise ContractViolation(f"point {x} lies in {hits} pieces; the pieces must be disjoint")
        count += hits
    return count


def diff_test(problem, bound: int, jobs: int = 1, symbolic=None) -> DiffReport:
    """Compare the box spline of ``problem`` with the brute-force count on the whole grid.

    The grid is [0, bound]^t for problems over N^t and [-bound, bound]^t over Z^t.
    Pass ``symbolic`` to check a stored box spline instead of building one.
    """
    from .spline import bs_eval
    F = problem.build() if symbolic is None else symbolic
    return compare_on_grid(problem.describe(), lambda p: bs_eval(F, p), problem.oracle,
                           problem.dim, bound, problem.natural, jobs)
