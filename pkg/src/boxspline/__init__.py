"""Exact counting functions of linear Diophantine systems as box splines.

A box spline here is a rational hyperplane arrangement over N^t or Z^t
together with one quasi-polynomial per region.  The package builds them for
non-negative systems, growth functions of semi-simple sets and vector
partition functions of pointed matrices, and checks them against brute force.
"""
from .arrangement import INTEGER, NATURAL, Arrangement, DomainError, Hyperplane, RegionWitness
from .diophantine import EQ, LE, DioSystem, PreconditionError, count_system
from .lattice import Lattice
from .oracle import (ContractViolation, DiffReport, diff_test, oracle_count_nonneg,
                     oracle_count_pointed, oracle_growth)
from .partition import DMInstance, build_CA, check_pointed, compute_hA
from .poly import AffineForm, Poly, faulhaber
from .problem import GrowthProblem, Problem
from .quasipoly import QuasiPolynomial, floor_affine
from .semilinear import GrowthSpec, SemiSimpleSet, SimpleSet, growth, growth_plus, growth_Z
from .spline import BoxSpline, bs_add, bs_eval, bs_line_sum

__version__ = "0.1.0"

__all__ = [
    "INTEGER", "NATURAL", "Arrangement", "DomainError", "Hyperplane", "RegionWitness",
    "EQ", "LE", "DioSystem", "PreconditionError", "count_system",
    "Lattice",
    "ContractViolation", "DiffReport", "diff_test", "oracle_count_nonneg", "oracle_count_pointed",
    "oracle_growth",
    "DMInstance", "build_CA", "check_pointed", "compute_hA",
    "AffineForm", "Poly", "faulhaber",
    "GrowthProblem", "Problem",
    "QuasiPolynomial", "floor_affine",
    "GrowthSpec", "SemiSimpleSet", "SimpleSet", "growth", "growth_plus", "growth_Z",
    "BoxSpline", "bs_add", "bs_eval", "bs_line_sum",
]
