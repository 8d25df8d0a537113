import itertools
import math
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from boxspline.arrangement import INTEGER, NATURAL, Arrangement, Hyperplane
from boxspline.diophantine import DioSystem, count_system
from boxspline.poly import AffineForm, Poly
from boxspline.quasipoly import QuasiPolynomial, floor_affine, qp_add, qp_rebase
from boxspline.serialize import dumps, loads, qp_from_json, qp_to_json
from boxspline.spline import bs_eval

from conftest import brute_count

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 6))


@st.composite
def affine_forms(draw, dim):
    return AffineForm([draw(fractions) for _ in range(dim)], draw(fractions))


@st.composite
def quasipolys(draw, dim=2):
    """Random quasi-polynomials glued from a residue family with small polynomial pieces."""
    d = draw(st.integers(1, 4))
    family = {}
    for r in itertools.product(range(d), repeat=dim):
        if draw(st.booleans()):
            terms = {}
            for _ in range(draw(st.integers(0, 2))):
                e = tuple(draw(st.integers(0, 2)) for _ in range(dim))
                terms[e] = draw(fractions)
            family[r] = QuasiPolynomial.from_poly(Poly(dim, terms))
    if draw(st.booleans()):
        family[(0,) * dim] = floor_affine(draw(affine_forms(dim)))
    return qp_rebase(family, d, dim)


POINTS2 = list(itertools.product(range(-6, 7, 3), range(-5, 6, 2)))


@SETTINGS
@given(quasipolys(), quasipolys())
def test_addition_is_pointwise(f, g):
    s = qp_add(f, g)
    for x in POINTS2:
        assert s.eval(x) == f.eval(x) + g.eval(x)


@SETTINGS
@given(quasipolys())
def test_canonical_form_is_unique(f):
    # expanding to a finer residue table and gluing back gives the identical structure
    d = f.period * 2
    again = QuasiPolynomial.from_residues(2, d, f.to_residue_table(d))
    assert again == f
    assert qp_add(f, -f).is_zero()


@SETTINGS
@given(quasipolys())
def test_json_round_trip(f):
    data = qp_to_json(f)
    text = dumps(data)
    back = qp_from_json(loads(text))
    assert back == f
    assert dumps(qp_to_json(back)) == text


@SETTINGS
@given(affine_forms(2))
def test_floor_and_ceil(form):
    fl, ce = floor_affine(form), floor_affine(form, "ceil")
    for x in POINTS2:
        v = form.eval(x)
        assert fl.eval(x) == math.floor(v) and ce.eval(x) == math.ceil(v)


matrices = st.integers(1, 2).flatmap(
    lambda t: st.integers(1, 3).flatmap(
        lambda k: st.lists(st.lists(st.integers(0, 3), min_size=k, max_size=k), min_size=t, max_size=t)))


@SETTINGS
@given(matrices, st.data())
def test_counts_are_natural_and_exact(m, data):
    if not all(any(row[j] for row in m) for j in range(len(m[0]))):
        return
    offsets = data.draw(st.lists(st.integers(0, 2), min_size=len(m), max_size=len(m)))
    S = count_system(DioSystem(tuple(map(tuple, m)), tuple(offsets)))
    for n in itertools.product(range(9), repeat=len(m)):
        v = bs_eval(S, n)
        assert v.denominator == 1 and v >= 0
        assert v == brute_count(m, offsets, n)


planes = st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-3, 3)),
                  max_size=4)


@SETTINGS
@given(planes, st.sampled_from([NATURAL, INTEGER]))
def test_every_grid_point_lies_in_exactly_one_region(raw, domain):
    arr = Arrangement(2, [Hyperplane(tuple(n), c) for n, c in raw if any(n)], domain)
    regions = arr.regions()
    known = {r.sign_vector for r in regions}
    assert len(known) == len(regions)
    for r in regions:
        assert arr.in_domain(r.point) and arr.signs(r.point) == r.sign_vector
    rng = range(0, 9) if domain == NATURAL else range(-8, 9)
    for x in itertools.product(rng, repeat=2):
        assert arr.signs(x) in known
