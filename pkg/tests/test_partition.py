import itertools
import random
from fractions import Fraction

import pytest

from boxspline.diophantine import PreconditionError
from boxspline.oracle import oracle_count_pointed
from boxspline.partition import (DMInstance, abs_arrangement, build_CA, check_pointed, compute_hA,
                                 pointed_witness, sign_and_argmax)
from boxspline.spline import bs_eval

from conftest import random_pointed


def brute_partition(A, b, cap):
    """#{X in [0, cap]^n : A X = b}; independent of the package's bound."""
    t, n = len(A), len(A[0])
    return sum(1 for X in itertools.product(range(cap + 1), repeat=n)
               if all(sum(A[i][j] * X[j] for j in range(n)) == b[i] for i in range(t)))


def test_check_pointed():
    assert check_pointed([[1, 0, 1], [0, 1, 1]])
    assert not check_pointed([[1, -1]])
    assert pointed_witness([[1, -1]]) == (1, 1)
    assert check_pointed([[1], [-1]])


def test_compute_hA():
    assert compute_hA([[1, 0, 1], [0, 1, 1]]) == 1
    assert compute_hA([[2]]) == Fraction(1, 2)
    assert compute_hA([[1], [-1]]) == 1


def test_hA_bounds_solutions():
    rng = random.Random(5)
    for _ in range(20):
        A = random_pointed(rng)
        h = compute_hA(A)
        t, n = len(A), len(A[0])
        for X in itertools.product(range(4), repeat=n):
            b = [sum(A[i][j] * X[j] for j in range(n)) for i in range(t)]
            assert max(X) <= h * max(abs(v) for v in b)


def test_abs_arrangement():
    a1 = abs_arrangement(1)
    assert len(a1.planes) == 1 and len(a1.regions()) == 3
    a2 = abs_arrangement(2)
    assert len(a2.planes) == 4
    assert sign_and_argmax((3, -5)) == ((1, -1), 1)


def test_build_example():
    C = build_CA([[1, 0, 1], [0, 1, 1]])
    assert bs_eval(C, (3, 5)) == 4 and bs_eval(C, (5, 3)) == 4 and bs_eval(C, (2, -1)) == 0
    for b in itertools.product(range(-12, 13), repeat=2):
        assert bs_eval(C, b) == (min(b) + 1 if min(b) >= 0 else 0)


def test_build_single_column():
    C = build_CA([[1], [-1]])
    for b in itertools.product(range(-8, 9), repeat=2):
        assert bs_eval(C, b) == (b[1] == -b[0] and b[0] >= 0)


def test_value_at_origin_is_one():
    rng = random.Random(9)
    for _ in range(10):
        A = random_pointed(rng)
        assert bs_eval(build_CA(A), (0,) * len(A)) == 1


def test_non_pointed_is_rejected():
    with pytest.raises(PreconditionError, match="pointedness condition violated.*X = \\[1, 1\\]"):
        build_CA([[1, -1]])
    with pytest.raises(ValueError):
        DMInstance(((1, 2), (3,)))


def test_random_instances_against_independent_brute_force():
    # the brute force searches a shell of width 3 beyond the h_A box, so it would
    # notice solutions that the h_A bound wrongly excludes
    rng = random.Random(11)
    for _ in range(8):
        A = random_pointed(rng, max_t=2, max_n=3)
        C = build_CA(A)
        h = compute_hA(A)
        for b in itertools.product(range(-5, 6), repeat=len(A)):
            cap = int(h * max(abs(v) for v in b)) + 3
            assert bs_eval(C, b) == brute_partition(A, b, cap) == oracle_count_pointed(A, b, h)
