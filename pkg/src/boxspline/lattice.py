"""Full-rank integer lattices in Hermite normal form.

A quasi-polynomial dispatches on the coset of its argument modulo a
full-rank sublattice of Z^t.  The classical choice is the box lattice
d*Z^t; allowing an arbitrary sublattice keeps tables small when the
dispatch really depends on a few linear congruences.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence


def hnf(rows: Iterable[Sequence[int]], dim: int) -> tuple[tuple[int, ...], ...]:
    """Row-style upper-triangular HNF of the lattice spanned by ``rows``.

    The span must have rank ``dim``.  Diagonal entries are positive and
    entries above each pivot are reduced into ``[0, pivot)``.
    """
    work = [list(r) for r in rows if any(r)]
    for col in range(dim):
        while True:
            nz = [k for k in range(col, len(work)) if work[k][col] != 0]
            if not nz:
                raise ValueError("generators do not span a full-rank lattice")
            piv = min(nz, key=lambda k: abs(work[k][col]))
            work[col], work[piv] = work[piv], work[col]
            prow = work[col]
            clean = True
            for k in range(col + 1, len(work)):
                v = work[k][col]
                if v:
                    q = v // prow[col]
                    work[k] = [a - q * b for a, b in zip(work[k], prow)]
                    if work[k][col]:
                        clean = False
            if clean:
                break
        if work[col][col] < 0:
            work[col] = [-a for a in work[col]]
        work = work[: col + 1] + [r for r in work[col + 1:] if any(r)]
    basis = work[:dim]
    for i in range(dim):
        p = basis[i][i]
        for k in range(i):
            q = basis[k][i] // p
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return tuple(tuple(r) for r in basis)


def _inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def rational_hnf(rows: Iterable[Sequence[Fraction]], dim: int) -> list[list[Fraction]]:
    rows = [[Fraction(v) for v in r] for r in rows]
    den = 1
    for r in rows:
        for v in r:
            den = lcm(den, v.denominator)
    ib = hnf([[int(v * den) for v in r] for r in rows], dim)
    return [[Fraction(v, den) for v in r] for r in ib]


class Lattice:
    """A full-rank sublattice of Z^dim, stored by its HNF basis rows."""

    __slots__ = ("basis", "dim", "__dict__")

    def __init__(self, basis: Iterable[Sequence[int]], dim: int | None = None):
        basis = [tuple(int(v) for v in r) for r in basis]
        if dim is None:
            dim = len(basis[0]) if basis else 0
        self.dim = dim
        self.basis = hnf(basis, dim) if dim else ()

    @classmethod
    def box(cls, dim: int, d: int = 1) -> "Lattice":
        return cls([[d if i == j else 0 for j in range(dim)] for i in range(dim)], dim)

    @classmethod
    def from_dual(cls, dual_rows: Iterable[Sequence[Fraction]], dim: int) -> "Lattice":
        """Lattice whose dual is spanned by Z^dim together with ``dual_rows``."""
        gens = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
        gens.extend([Fraction(v) for v in r] for r in dual_rows)
        dual = rational_hnf(gens, dim)
        inv_t = _transpose(_inverse(dual))
        return cls([[int(v) for v in r] for r in inv_t], dim)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Lattice({[list(r) for r in self.basis]})"

    @cached_property
    def dual_basis(self) -> list[list[Fraction]]:
        if not self.dim:
            return []
        return _transpose(_inverse([[Fraction(v) for v in r] for r in self.basis]))

    @cached_property
    def index(self) -> int:
        out = 1
        for i in range(self.dim):
            out *= self.basis[i][i]
        return out

    @cached_property
    def exponent(self) -> int:
        """Smallest d > 0 with d*Z^dim contained in the lattice."""
        d = 1
        for row in self.dual_basis:
            for v in row:
                d = lcm(d, v.denominator)
        return d

    def is_box(self) -> bool:
        d = self.exponent
        return self.index == d ** self.dim

    def order_of(self, v: Sequence[int]) -> int:
        """Order of ``v`` in the finite group Z^dim / lattice."""
        d = 1
        for row in self.dual_basis:
            d = lcm(d, sum((a * b for a, b in zip(row, v)), Fraction(0)).denominator)
        return d

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coset representative: 0 <= r_i < basis[i][i]."""
        x = list(x)
        for i, row in enumerate(self.basis):
            q = x[i] // row[i]
            if q:
                for j in range(i, self.dim):
                    x[j] -= q * row[j]
        return tuple(x)

    def contains(self, x: Sequence[int]) -> bool:
        return not any(self.reduce(x))

    def cosets(self) -> Iterable[tuple[int, ...]]:
        """Canonical representatives of every coset, in lexicographic order."""
        return itertools.product(*(range(self.basis[i][i]) for i in range(self.dim)))

    def intersect(self, other: "Lattice") -> "Lattice":
        if self == other:
            return self
        if self.index == 1:
            return other
        if other.index == 1:
            return self
        return Lattice.from_dual(self.dual_basis + other.dual_basis, self.dim)

    def join(self, gens: Iterable[Sequence[int]]) -> "Lattice":
        """Smallest lattice containing this one and ``gens``."""
        return Lattice(list(self.basis) + [list(g) for g in gens], self.dim)

    def preimage(self, matrix: Sequence[Sequence[int]], src_dim: int) -> "Lattice":
        """{z in Z^src_dim : matrix @ z in self} for an integer dim x src_dim matrix."""
        rows = []
        for y in self.dual_basis:
            rows.append([sum((y[i] * matrix[i][j] for i in range(self.dim)), Fraction(0))
                         for j in range(src_dim)])
        return Lattice.from_dual(rows, src_dim)


def congruence_lattice(coeffs: Sequence[int], modulus: int) -> Lattice:
    """{z : coeffs . z == 0 (mod modulus)}."""
    dim = len(coeffs)
    g = gcd(modulus, *coeffs) if coeffs else modulus
    m = modulus // g
    if m == 1:
        return Lattice.box(dim)
    return Lattice.from_dual([[Fraction(c // g, m) for c in coeffs]], dim)


def _transpose(m):
    return [list(r) for r in zip(*m)]


def column_reduce(rows: Sequence[Sequence[int]], dim: int):
    """Unimodular V with rows @ V lower echelon: returns (rows @ V, V, V^-1, pivots, rank).

    The last ``dim - rank`` columns of V span the integer kernel of ``rows``.
    """
    M = [list(r) for r in rows]
    V = [[int(i == j) for j in range(dim)] for i in range(dim)]  # columns transform
    Vinv = [[int(i == j) for j in range(dim)] for i in range(dim)]
    pivots = []  # (row, column)
    p = 0
    for i in range(len(M)):
        if p == dim:
            break
        while True:
            nz = [j for j in range(p, dim) if M[i][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(M[i][j]))
            if j0 != p:
                for r in M:
                    r[p], r[j0] = r[j0], r[p]
                for r in V:
                    r[p], r[j0] = r[j0], r[p]
                Vinv[p], Vinv[j0] = Vinv[j0], Vinv[p]
            done = True
            for k in range(p + 1, dim):
                if M[i][k]:
                    q = M[i][k] // M[i][p]
                    for r in M:
                        r[k] -= q * r[p]
                    for r in V:
                        r[k] -= q * r[p]
                    Vinv[p] = [a + q * b for a, b in zip(Vinv[p], Vinv[k])]
                    if M[i][k]:
                        done = False
            if done:
                break
        if M[i][p] if p < dim else 0:
            pivots.append((i, p))
            p += 1
    return M, V, Vinv, pivots, p


def integer_solutions(rows: Sequence[Sequence[int]], consts: Sequence[int], dim: int):
    """Integer points of {x : rows . x + consts = 0}.

    Returns ``(x0, basis, coords)`` with every solution equal to x0 + basis @ z for a
    unique integer z, where ``coords`` are integer rows giving z = coords @ (x - x0);
    None when there is no integer solution.
    """
    M, V, Vinv, pivots, rank = column_reduce(rows, dim)
    y = [0] * dim
    piv_rows = dict(pivots)
    for i in range(len(M)):
        if i in piv_rows:
            col = piv_rows[i]
            s = -consts[i] - sum(M[i][j] * y[j] for j in range(col))
            if s % M[i][col]:
                return None
            y[col] = s // M[i][col]
        else:
            if sum(M[i][j] * y[j] for j in range(dim)) + consts[i] != 0:
                return None
    x0 = [sum(V[r][j] * y[j] for j in range(rank)) for r in range(dim)]
    basis = [[V[r][j] for j in range(rank, dim)] for r in range(dim)]
    coords = [Vinv[j] for j in range(rank, dim)]
    return x0, basis, coords
