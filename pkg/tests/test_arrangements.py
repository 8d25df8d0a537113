import itertools
import random

import pytest

from boxspline.arrangement import (INTEGER, NATURAL, Arrangement, DomainError, Hyperplane, _enumerate,
                                   enumerate_regions, line_refinement, refine, sign_vector_of)


def plane(*normal, c=0):
    return Hyperplane(tuple(normal), c)


EXAMPLE = Arrangement(2, [plane(3, -2)], NATURAL)


def check_partition(arr, bound):
    """Every grid point's sign vector is an enumerated region, and every witness is honest."""
    regions = enumerate_regions(arr)
    signs = [r.sign_vector for r in regions]
    assert len(set(signs)) == len(signs)
    for r in regions:
        assert r.is_integral
        assert arr.in_domain(r.point)
        assert arr.signs(r.point) == r.sign_vector
    known = set(signs)
    rng = range(0, bound + 1) if arr.domain == NATURAL else range(-bound, bound + 1)
    hit = set()
    for x in itertools.product(rng, repeat=arr.dim):
        sv = arr.signs(x)
        assert sv in known, (x, sv)
        hit.add(sv)
    return regions, hit


def test_sign_vectors_of_example():
    assert sign_vector_of(EXAMPLE, (2, 3)) == "++0"
    assert sign_vector_of(EXAMPLE, (1, 1)) == "+++"
    assert sign_vector_of(EXAMPLE, (0, 0)) == "000"


def test_sign_vector_outside_domain():
    with pytest.raises(DomainError):
        sign_vector_of(EXAMPLE, (-1, 0))
    with pytest.raises(DomainError):
        sign_vector_of(EXAMPLE, (1, 2, 3))


def test_region_counts():
    assert len(enumerate_regions(EXAMPLE)) == 6
    assert len(enumerate_regions(Arrangement(1, [], NATURAL))) == 2
    assert len(enumerate_regions(Arrangement(2, [], INTEGER))) == 9


def test_example_regions_are_the_expected_ones():
    got = {r.sign_vector for r in enumerate_regions(EXAMPLE)}
    # origin, positive x-axis, 3x > 2y, 3x = 2y, 3x < 2y, positive y-axis
    assert got == {"000", "+0+", "+++", "++0", "++-", "0+-"}


def test_refine():
    a = Arrangement(2, [plane(3, -2)])
    assert refine(a, a) == a
    b = refine(Arrangement(2, []), Arrangement(2, [plane(3, -2)]))
    assert b.planes == (plane(1, 0), plane(0, 1), plane(3, -2))
    assert plane(2, -4) == plane(1, -2)
    assert len(Arrangement(2, [plane(1, -2), plane(2, -4), plane(-1, 2)])) == 3


def test_line_refinement_example():
    out = line_refinement(EXAMPLE, (1, 2))
    assert set(out.planes) - set(EXAMPLE.planes) == {plane(2, -1)}


def test_line_refinement_trivial_cases():
    arr = Arrangement(2, [])
    # along (1,0) the plane y = 0 is never crossed; only x = 0 is, so nothing new
    assert line_refinement(arr, (1, 0)) == arr
    one = Arrangement(1, [])
    assert line_refinement(one, (1,)) == one


def test_affine_regions_with_empty_lattice_part_are_dropped():
    # 0 < 2x - 1 < 1 has no integer point; the arrangement over Z^1 has 2x - 1 = 0 and 2x - 3 = 0
    arr = Arrangement(1, [plane(2, c=-1), plane(2, c=-3)], INTEGER)
    regions, _ = check_partition(arr, 6)
    pts = {r.sign_vector for r in regions}
    # no integer point lies on either plane, so only open intervals remain
    assert all("0" not in sv[1:] for sv in pts)


def _random_arrangement(rng, dim, domain, affine):
    planes = []
    for _ in range(rng.randint(1, 4)):
        n = [rng.randint(-3, 3) for _ in range(dim)]
        if not any(n):
            continue
        planes.append(Hyperplane(tuple(n), rng.randint(-4, 4) if affine else 0))
    return Arrangement(dim, planes, domain)


@pytest.mark.parametrize("seed", range(6))
def test_partition_property_random(seed):
    rng = random.Random(seed)
    for _ in range(15):
        dim = rng.randint(1, 3)
        arr = _random_arrangement(rng, dim, rng.choice([NATURAL, INTEGER]), rng.random() < 0.5)
        check_partition(arr, 5 if dim == 3 else 9)


@pytest.mark.parametrize("seed", range(4))
def test_two_enumerators_agree(seed):
    rng = random.Random(100 + seed)
    for _ in range(12):
        dim = rng.randint(1, 3)
        arr = _random_arrangement(rng, dim, rng.choice([NATURAL, INTEGER]), rng.random() < 0.5)
        a = {r.sign_vector for r in enumerate_regions(arr)}
        b = {r.sign_vector for r in _enumerate(arr)}
        assert a == b
