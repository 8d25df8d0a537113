"""Semi-simple sets and their growth functions as box splines.

A simple set is ``a + N b_1 + ... + N b_n`` with linearly independent
generators; a semi-simple set is a finite disjoint union of simple sets, in
either ambient group N^t or Z^t.  Coefficients are always natural numbers:
every semi-linear set of N^t or Z^t has such a representation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangement import INTEGER, NATURAL
from .diophantine import EQ, LE, DioSystem, PreconditionError, count_system
from .spline import BoxSpline, bs_add


def _rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by exact elimination."""
    M = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class SimpleSet:
    offset: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...] = ()
    lattice: str = NATURAL

    def __post_init__(self):
        off = tuple(int(v) for v in self.offset)
        gens = tuple(tuple(int(v) for v in g) for g in self.generators)
        object.__setattr__(self, "offset", off)
        object.__setattr__(self, "generators", gens)
        if self.lattice not in (NATURAL, INTEGER):
            raise ValueError("lattice must be 'N' or 'Z'")
        if any(len(g) != len(off) for g in gens):
            raise ValueError("generator length differs from the offset length")
        if gens and _rank(gens) != len(gens):
            raise ValueError("generators are not linearly independent")
        if self.lattice == NATURAL and (any(v < 0 for v in off) or any(v < 0 for g in gens for v in g)):
            raise ValueError("a set of N^t needs non-negative offset and generators")

    @property
    def dim(self) -> int:
        return len(self.offset)

    def reflect(self, alpha: Sequence[int]) -> "SimpleSet":
        """Image under x -> (alpha_1 x_1, ..., alpha_t x_t), placed in N^t."""
        off = tuple(a * v for a, v in zip(alpha, self.offset))
        gens = tuple(tuple(a * v for a, v in zip(alpha, g)) for g in self.generators)
        return SimpleSet(off, gens, NATURAL)


@dataclass(frozen=True)
class SemiSimpleSet:
    dim: int
    pieces: tuple[SimpleSet, ...]
    lattice: str = NATURAL

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for s in self.pieces:
            if s.dim != self.dim:
                raise ValueError("piece dimension mismatch")
            if s.lattice != self.lattice:
                raise ValueError("pieces must share the lattice of the set")

    @classmethod
    def of(cls, lattice: str, *pieces: tuple) -> "SemiSimpleSet":
        """Shorthand: ``SemiSimpleSet.of("Z", ((0,), []), ((1,), [(1,)]))``."""
        built = [SimpleSet(off, gens, lattice) for off, gens in pieces]
        return cls(len(built[0].offset), tuple(built), lattice)


@dataclass(frozen=True)
class GrowthSpec:
    """The first ``t1`` coordinates are matched exactly, the last ``t2`` bounded."""

    t1: int
    t2: int

    def __post_init__(self):
        if self.t1 < 0 or self.t2 < 0:
            raise ValueError("t1 and t2 must be non-negative")

    @property
    def dim(self) -> int:
        return self.t1 + self.t2


def membership(s: SimpleSet, x: Sequence[int]) -> bool:
    """Is x = offset + sum m_i b_i for natural numbers m_i?"""
    if len(x) != s.dim:
        raise ValueError("dimension mismatch")
    t, n = s.dim, len(s.generators)
    rhs = [Fraction(v - a) for v, a in zip(x, s.offset)]
    if n == 0:
        return not any(rhs)
    # eliminate on the augmented t x (n+1) system; independence gives at most one solution
    M = [[Fraction(s.generators[j][i]) for j in range(n)] + [rhs[i]] for i in range(t)]
    row = 0
    pivots = []
    for c in range(n):
        piv = next(i for i in range(row, t) if M[i][c])
        M[row], M[piv] = M[piv], M[row]
        M[row] = [v / M[row][c] for v in M[row]]
        for i in range(t):
            if i != row and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        pivots.append(c)
        row += 1
    if any(M[i][n] for i in range(n, t)):
        return False
    m = [M[i][n] for i in range(n)]
    return all(v.denominator == 1 and v >= 0 for v in m)


def _piece_system(s: SimpleSet, spec: GrowthSpec) -> DioSystem:
    """Unknowns are the coefficients m_j; row i reads offset_i + sum_j b_j[i] m_j (= or <=) eta_i."""
    t, n = s.dim, len(s.generators)
    matrix = tuple(tuple(s.generators[j][i] for j in range(n)) for i in range(t))
    rels = (EQ,) * spec.t1 + (LE,) * spec.t2
    return DioSystem(matrix, s.offset, rels, cols=n)


def growth_plus(X: SemiSimpleSet, spec: GrowthSpec) -> BoxSpline:
    """eta -> #{x in X : x_i = eta_i (i <= t1), x_i <= eta_i (i > t1)} for X in N^t."""
    if X.lattice != NATURAL:
        raise ValueError("growth_plus needs a set of N^t; use growth_Z")
    if spec.dim != X.dim:
        raise ValueError(f"growth spec covers {spec.dim} coordinates, the set has {X.dim}")
    out = BoxSpline.zero(X.dim, NATURAL)
    for s in X.pieces:
        out = bs_add(out, count_system(_piece_system(s, spec)))
    return out


def check_orthant_compatible(s: SimpleSet) -> tuple[int, ...]:
    """A sign vector alpha reflecting offset and generators into N^t, or PreconditionError."""
    alpha = []
    for i in range(s.dim):
        vals = [s.offset[i]] + [g[i] for g in s.generators]
        pos = any(v > 0 for v in vals)
        neg = any(v < 0 for v in vals)
        if pos and neg:
            raise PreconditionError(
                f"piece with offset {list(s.offset)} is not orthant-compatible: "
                f"coordinate {i + 1} takes both signs")
        alpha.append(-1 if neg else 1)
    return tuple(alpha)


def growth_Z(X: SemiSimpleSet, spec: GrowthSpec) -> BoxSpline:
    """eta -> #{x in X : |x_i| = eta_i (i <= t1), |x_i| <= eta_i (i > t1)}, over N^t."""
    if spec.dim != X.dim:
        raise ValueError(f"growth spec covers {spec.dim} coordinates, the set has {X.dim}")
    reflected = [s.reflect(check_orthant_compatible(s)) for s in X.pieces]
    return growth_plus(SemiSimpleSet(X.dim, tuple(reflected), NATURAL), spec)


def growth(X: SemiSimpleSet) -> BoxSpline:
    """The plain growth function: every coordinate bounded in absolute value."""
    spec = GrowthSpec(0, X.dim)
    if X.lattice == NATURAL:
        return growth_plus(X, spec)
    return growth_Z(X, spec)


def check_disjoint_sampled(X: SemiSimpleSet, bound: int) -> list[tuple[int, ...]]:
    """Points of the box [-bound, bound]^t (intersected with the lattice) lying in two or more pieces."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if len(X.pieces) < 2:
        return []
    rng = range(0, bound + 1) if X.lattice == NATURAL else range(-bound, bound + 1)
    out = []
    for x in itertools.product(rng, repeat=X.dim):
        if sum(1 for s in X.pieces if membership(s, x)) >= 2:
            out.append(x)
    return out
