import itertools
import random
from fractions import Fraction

import pytest

from boxspline.lattice import Lattice, column_reduce, congruence_lattice, hnf, integer_solutions
from boxspline.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible_point, maximize, maximize_free, minimize


def solve2(a, b):
    """Intersection of two lines a[0].x = b[0], a[1].x = b[1] in the plane, or None."""
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if det == 0:
        return None
    x = Fraction(b[0] * a[1][1] - b[1] * a[0][1], det)
    y = Fraction(a[0][0] * b[1] - a[1][0] * b[0], det)
    return (x, y)


def vertex_optimum(c, A, b):
    """Maximum of c.x over {A x <= b} in the plane by enumerating vertices (region assumed bounded)."""
    best = None
    for i, j in itertools.combinations(range(len(A)), 2):
        p = solve2([A[i], A[j]], [b[i], b[j]])
        if p is None or any(sum(r[k] * p[k] for k in range(2)) > bb for r, bb in zip(A, b)):
            continue
        v = c[0] * p[0] + c[1] * p[1]
        best = v if best is None else max(best, v)
    return best


def test_lp_against_vertex_enumeration():
    rng = random.Random(3)
    checked = 0
    for _ in range(300):
        A = [[rng.randint(-4, 4), rng.randint(-4, 4)] for _ in range(rng.randint(1, 5))]
        b = [rng.randint(-5, 8) for _ in A]
        # a bounding box keeps every instance bounded
        A += [[1, 0], [-1, 0], [0, 1], [0, -1]]
        b += [10, 10, 10, 10]
        c = [rng.randint(-3, 3), rng.randint(-3, 3)]
        expected = vertex_optimum(c, A, b)
        res = maximize(c, A, b, free=True)
        res2 = maximize_free(c, A, b)
        if expected is None:
            assert res.status == INFEASIBLE
            continue
        checked += 1
        assert res.status == OPTIMAL and res.value == expected
        assert res2.status == OPTIMAL and res2.value == expected
        assert all(sum(r[k] * res.x[k] for k in range(2)) <= bb for r, bb in zip(A, b))
    assert checked > 100


def test_lp_status_cases():
    assert maximize([1], [[-1]], [0]).status == UNBOUNDED
    assert maximize([1], [[1]], [-1]).status == INFEASIBLE
    r = minimize([1, 1], [[-1, -2]], [-4])
    assert r.status == OPTIMAL and r.value == 2
    assert feasible_point(A_eq=[[1, -1]], b_eq=[0], A_ub=[[1, 1]], b_ub=[4]) is not None


def test_hnf_is_canonical():
    a = hnf([[2, 0], [0, 3]], 2)
    b = hnf([[2, 3], [2, 0], [0, 3]], 2)
    assert Lattice([[2, 0], [0, 3]]) == Lattice([[2, 0], [0, 3], [4, 6]])
    assert a[0][0] > 0 and a[1][1] > 0
    assert b == hnf([[2, 3], [0, 3]], 2)


def test_congruence_lattice():
    lat = congruence_lattice([1, 2], 4)
    for x in itertools.product(range(-8, 9), repeat=2):
        assert lat.contains(x) == ((x[0] + 2 * x[1]) % 4 == 0)


def test_lattice_intersect_and_join():
    a = Lattice.box(1, 2)
    b = Lattice.box(1, 3)
    assert a.intersect(b) == Lattice.box(1, 6)
    assert a.join([[3]]) == Lattice.box(1, 1)


def test_integer_solutions_parametrize_all_points():
    rows = [[2, 3, -1]]
    consts = [-4]
    x0, basis, _ = integer_solutions(rows, consts, 3)
    assert 2 * x0[0] + 3 * x0[1] - x0[2] - 4 == 0
    found = set()
    for z in itertools.product(range(-6, 7), repeat=len(basis[0]) if basis else 0):
        x = tuple(x0[i] + sum(basis[i][k] * z[k] for k in range(len(z))) for i in range(3))
        assert 2 * x[0] + 3 * x[1] - x[2] == 4
        found.add(x)
    # every small solution is reached
    for x in itertools.product(range(-2, 3), repeat=2):
        x3 = 2 * x[0] + 3 * x[1] - 4
        assert (x[0], x[1], x3) in found


def test_integer_solutions_none():
    assert integer_solutions([[2, 4]], [-1], 2) is None


def test_column_reduce_kernel():
    rows = [[1, 2, 3], [2, 4, 6]]
    MV, V, Vinv, pivots, rank = column_reduce(rows, 3)
    assert rank == 1
    for c in range(rank, 3):
        col = [V[i][c] for i in range(3)]
        assert all(sum(r[i] * col[i] for i in range(3)) == 0 for r in rows)
