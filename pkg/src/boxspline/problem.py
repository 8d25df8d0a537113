"""The three counting problems the package solves, behind one small interface.

Each problem knows how to build its box spline, how to count a single point
by brute force, and which grid (N^t or Z^t) the two should agree on.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from .diophantine import DioSystem, count_system, slackify
from .partition import DMInstance, build_CA, compute_hA
from .semilinear import GrowthSpec, SemiSimpleSet, growth_plus, growth_Z
from .spline import BoxSpline

DIOPHANTINE = "diophantine"
GROWTH = "growth"
DM = "dm"
KINDS = (DIOPHANTINE, GROWTH, DM)


@dataclass(frozen=True)
class GrowthProblem:
    set: SemiSimpleSet
    spec: GrowthSpec


Payload = Union[DioSystem, GrowthProblem, DMInstance]


@dataclass(frozen=True)
class Problem:
    kind: str
    payload: Payload

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}")

    @property
    def dim(self) -> int:
        p = self.payload
        if self.kind == DIOPHANTINE:
            return p.rows
        if self.kind == GROWTH:
            return p.set.dim
        return p.t

    @property
    def natural(self) -> bool:
        """True when the answer lives on N^t, False for Z^t."""
        return self.kind != DM

    def describe(self) -> str:
        p = self.payload
        if self.kind == DIOPHANTINE:
            return f"diophantine matrix={[list(r) for r in p.matrix]} offsets={list(p.offsets)} relations={list(p.relations)}"
        if self.kind == GROWTH:
            pieces = [(list(s.offset), [list(g) for g in s.generators]) for s in p.set.pieces]
            return f"growth lattice={p.set.lattice} t1={p.spec.t1} t2={p.spec.t2} pieces={pieces}"
        return f"dm matrix={[list(r) for r in p.matrix]}"

    def build(self) -> BoxSpline:
        p = self.payload
        if self.kind == DIOPHANTINE:
            return count_system(p)
        if self.kind == GROWTH:
            if p.set.lattice == "N":
                return growth_plus(p.set, p.spec)
            return growth_Z(p.set, p.spec)
        return build_CA(p)

    @cached_property
    def _oracle_data(self):
        if self.kind == DIOPHANTINE:
            return slackify(self.payload)
        if self.kind == DM:
            self.payload.require_pointed()
            return compute_hA(self.payload.matrix)
        return None

    def oracle(self, point) -> Fraction:
        from .oracle import oracle_count_nonneg, oracle_count_pointed, oracle_growth
        p = self.payload
        if self.kind == DIOPHANTINE:
            return Fraction(oracle_count_nonneg(self._oracle_data, point))
        if self.kind == GROWTH:
            return Fraction(oracle_growth(p.set, p.spec, point))
        return Fraction(oracle_count_pointed(p.matrix, point, self._oracle_data))
