import itertools

import pytest

from boxspline.arrangement import INTEGER, NATURAL, Arrangement, DomainError, Hyperplane
from boxspline.diophantine import count_system
from boxspline.quasipoly import QuasiPolynomial
from boxspline.spline import (BoundSpec, BoxSpline, bs_add, bs_eval, bs_line_sum, bs_reflect,
                              bs_specialize, bs_to_integer_domain)

from conftest import SYSTEM_ONE_UNKNOWN, SYSTEM_TWO_UNKNOWNS

GRID2 = list(itertools.product(range(11), repeat=2))


def indicator(arr, keep):
    """Box spline equal to 1 on the regions whose sign vector satisfies ``keep``."""
    one = QuasiPolynomial.constant(arr.dim, 1)
    return BoxSpline(arr, {r.sign_vector: one for r in arr.regions() if keep(r.sign_vector)})


def test_eval_example():
    F = count_system(SYSTEM_TWO_UNKNOWNS)
    assert bs_eval(F, (2, 3)) == 1
    assert bs_eval(F, (1, 1)) == 0
    assert bs_eval(F, (0, 0)) == 1


def test_eval_domain_errors():
    F = count_system(SYSTEM_TWO_UNKNOWNS)
    with pytest.raises(DomainError):
        bs_eval(F, (-1, 2))
    with pytest.raises(DomainError):
        bs_eval(F, (1,))


def test_add():
    G = count_system(SYSTEM_ONE_UNKNOWN)
    Z = BoxSpline.zero(2)
    S = bs_add(G, Z)
    assert all(bs_eval(S, x) == bs_eval(G, x) for x in GRID2)
    o = BoxSpline.point_indicator((0, 0))
    two = bs_add(o, o)
    assert all(bs_eval(two, x) == (2 if x == (0, 0) else 0) for x in GRID2)
    assert bs_eval(bs_add(G, G), (2, 3)) == 2


def test_line_sum_reproduces_example():
    G = count_system(SYSTEM_ONE_UNKNOWN)
    F = bs_line_sum(G, (1, 2), BoundSpec.min_ratio((1, 2)))
    assert bs_eval(F, (2, 3)) == 1 and bs_eval(F, (1, 1)) == 0 and bs_eval(F, (0, 0)) == 1
    direct = count_system(SYSTEM_TWO_UNKNOWNS)
    assert all(bs_eval(F, x) == bs_eval(direct, x) for x in GRID2)


def test_line_sum_of_origin_indicator_is_diagonal():
    S = bs_line_sum(BoxSpline.point_indicator((0, 0)), (1, 1), BoundSpec.min_ratio((1, 1)))
    assert all(bs_eval(S, (x, y)) == (x == y) for x, y in GRID2)


def test_line_sum_of_constant():
    S = bs_line_sum(BoxSpline.constant(2, 1), (1, 0), BoundSpec.min_ratio((1, 0)))
    assert all(bs_eval(S, (x, y)) == x + 1 for x, y in GRID2)


def test_line_sum_open_bounds():
    G = BoxSpline.constant(1, 1)
    S = bs_line_sum(G, (2,), BoundSpec.min_ratio((2,), upper_closed=False))
    # lambda in [0, x/2), integer lambda
    for x in range(20):
        assert bs_eval(S, (x,)) == len([l for l in range(x + 1) if 2 * l < x])


def test_specialize():
    diag = bs_line_sum(BoxSpline.point_indicator((0, 0)), (1, 1), BoundSpec.min_ratio((1, 1)))
    G = bs_specialize(diag, 1, 2)
    assert all(bs_eval(G, (x,)) == (x == 0) for x in range(30))
    assert all(bs_eval(bs_specialize(BoxSpline.constant(2, 1), 1, 1), (x,)) == 1 for x in range(10))
    arr = Arrangement(2, [Hyperplane((-1, 1))])
    # the plane is stored as x1 - x2 = 0, so x2 >= x1 is the sign "-" or "0"
    upper = indicator(arr, lambda sv: sv[2] in "-0")
    assert all(bs_eval(upper, (x, y)) == (y >= x) for x, y in GRID2)
    H = bs_specialize(upper, 1, 3)
    assert all(bs_eval(H, (x,)) == 1 for x in range(30))


def test_reflect():
    F = count_system(SYSTEM_TWO_UNKNOWNS)
    assert bs_reflect(F, (1, 1)) is F
    half = indicator(Arrangement(1, [], INTEGER), lambda sv: sv in "+0")
    R = bs_reflect(half, (-1,))
    assert all(bs_eval(R, (x,)) == (x <= 0) for x in range(-10, 11))
    sector = indicator(Arrangement(2, [Hyperplane((3, -2))], INTEGER), lambda sv: sv[2] == "+")
    R = bs_reflect(sector, (-1, 1))
    for x, y in itertools.product(range(-10, 11), repeat=2):
        assert bs_eval(R, (-x, y)) == bs_eval(sector, (x, y))


def test_reflect_natural_spline_vanishes_off_orthant():
    F = BoxSpline.constant(2, 1)
    R = bs_reflect(F, (1, -1))
    assert R.domain == INTEGER
    for x, y in itertools.product(range(-5, 6), repeat=2):
        assert bs_eval(R, (x, y)) == (x >= 0 and y <= 0)


def test_integer_extension():
    F = count_system(SYSTEM_TWO_UNKNOWNS)
    Z = bs_to_integer_domain(F)
    for x in itertools.product(range(-5, 12), repeat=2):
        expected = bs_eval(F, x) if min(x) >= 0 else 0
        assert bs_eval(Z, x) == expected


def test_point_indicator_and_structural_equality():
    a = BoxSpline.point_indicator((2, 1))
    b = BoxSpline.point_indicator((2, 1))
    assert a.structurally_equal(b)
    assert all(bs_eval(a, x) == (x == (2, 1)) for x in GRID2)
    with pytest.raises(DomainError):
        BoxSpline.point_indicator((-1, 0))
