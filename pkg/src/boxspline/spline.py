"""Box splines: a hyperplane arrangement plus one quasi-polynomial per region.

The central operation is :func:`bs_line_sum`, which sums a box spline along
the integer points of a ray segment ``x - l*a`` whose length is itself an
affine function of ``x`` (possibly chosen region by region).
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .arrangement import (INTEGER, NATURAL, Arrangement, DomainError, Hyperplane, RegionWitness,
                          crossing_form, refine)
from .lattice import integer_solutions
from .lp import OPTIMAL, maximize
from .poly import AffineForm
from .quasipoly import QuasiPolynomial, line_partial_sum, qp_add, qp_pullback, qp_sum


class BoxSpline:
    __slots__ = ("arrangement", "pieces")

    def __init__(self, arrangement: Arrangement, pieces: Mapping[str, QuasiPolynomial] | None = None):
        self.arrangement = arrangement
        clean = {}
        for sv, q in (pieces or {}).items():
            if len(sv) != len(arrangement.planes):
                raise ValueError("sign vector length does not match the arrangement")
            if q.dim != arrangement.dim:
                raise ValueError("piece dimension does not match the arrangement")
            if not q.is_zero():
                clean[sv] = q
        self.pieces = dict(sorted(clean.items()))

    @property
    def dim(self) -> int:
        return self.arrangement.dim

    @property
    def domain(self) -> str:
        return self.arrangement.domain

    def __repr__(self):
        return (f"BoxSpline({self.domain}^{self.dim}, {len(self.arrangement.planes)} planes, "
                f"{len(self.pieces)} nonzero pieces)")

    def __call__(self, *x):
        return bs_eval(self, x)

    def regions(self) -> list[RegionWitness]:
        return self.arrangement.regions()

    def piece(self, sign_vector: str) -> QuasiPolynomial:
        return self.pieces.get(sign_vector) or QuasiPolynomial.zero(self.dim)

    def structurally_equal(self, other: "BoxSpline") -> bool:
        return self.arrangement == other.arrangement and self.pieces == other.pieces

    # -- simple constructors --------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, domain: str = NATURAL) -> "BoxSpline":
        return cls(Arrangement(dim, (), domain), {})

    @classmethod
    def constant(cls, dim: int, c, domain: str = NATURAL) -> "BoxSpline":
        arr = Arrangement(dim, (), domain)
        q = QuasiPolynomial.constant(dim, c)
        return cls(arr, {r.sign_vector: q for r in arr.regions()})

    @classmethod
    def point_indicator(cls, point: Sequence[int], domain: str = NATURAL) -> "BoxSpline":
        """1 at ``point``, 0 elsewhere."""
        dim = len(point)
        planes = [Hyperplane(tuple(int(i == j) for j in range(dim)), -int(c))
                  for i, c in enumerate(point) if c]
        arr = Arrangement(dim, planes, domain)
        if not arr.in_domain(point):
            raise DomainError("indicator point outside the domain")
        return cls(arr, {arr.signs(point): QuasiPolynomial.constant(dim, 1)})


def bs_eval(F: BoxSpline, x: Sequence[int]) -> Fraction:
    arr = F.arrangement
    if len(x) != arr.dim:
        raise DomainError(f"expected a point with {arr.dim} coordinates, got {len(x)}")
    if any(not isinstance(v, int) for v in x):
        raise DomainError("box splines are evaluated at integer points")
    if not arr.in_domain(x):
        raise DomainError(f"point {tuple(x)} is outside N^{arr.dim}")
    q = F.pieces.get(arr.signs(x))
    return q.eval(x) if q is not None else Fraction(0)


def _project(sv: str, idx: Sequence[int]) -> str:
    return "".join(sv[i] for i in idx)


FULL = "full"


@lru_cache(maxsize=4096)
def _hull(zero_planes: tuple[Hyperplane, ...], dim: int):
    """Integer parametrisation of the affine hull cut out by ``zero_planes``.

    FULL when there are no equalities, None when the hull has no integer point.
    """
    if not zero_planes:
        return FULL
    sol = integer_solutions([p.normal for p in zero_planes], [p.constant for p in zero_planes], dim)
    if sol is None:
        return None
    x0, basis, coords = sol
    return tuple(x0), tuple(map(tuple, basis)), tuple(map(tuple, coords))


def _zero_planes(planes: Sequence[Hyperplane], sv: str) -> tuple[Hyperplane, ...]:
    return tuple(p for p, s in zip(planes, sv) if s == "0")


@lru_cache(maxsize=65536)
def _restrict(q: QuasiPolynomial, hull) -> QuasiPolynomial | None:
    """Canonical representative of q modulo the integer points of ``hull``."""
    if hull is None:
        return None
    if hull == FULL or q.is_zero():
        return q
    x0, basis, coords = hull
    t = q.dim
    r = len(coords)
    if r == 0:
        return QuasiPolynomial.constant(t, q.eval(x0))
    qz = qp_pullback(q, basis, r, x0)
    shift = [-sum(c * v for c, v in zip(row, x0)) for row in coords]
    return qp_pullback(qz, coords, t, shift)


def canonical_piece(arr: Arrangement, sv: str, q: QuasiPolynomial | None) -> QuasiPolynomial | None:
    """Reduce q to its canonical form on the region ``sv``; None when it vanishes there."""
    if q is None:
        return None
    out = _restrict(q, _hull(_zero_planes(arr.planes, sv), arr.dim))
    if out is None or out.is_zero():
        return None
    return out


def bs_add(F1: BoxSpline, F2: BoxSpline, simplify: bool = True) -> BoxSpline:
    """Pointwise sum on the common refinement of both arrangements."""
    a1, a2 = F1.arrangement, F2.arrangement
    if a1.dim != a2.dim or a1.domain != a2.domain:
        raise ValueError("box splines differ in dimension or domain")
    if not F2.pieces:
        return F1
    if not F1.pieces:
        return F2
    arr = refine(a1, a2)
    i1 = [arr.index(p) for p in a1.planes]
    i2 = [arr.index(p) for p in a2.planes]
    zero = QuasiPolynomial.zero(arr.dim)
    pieces = {}
    for r in arr.regions():
        p = F1.pieces.get(_project(r.sign_vector, i1), zero)
        q = F2.pieces.get(_project(r.sign_vector, i2), zero)
        s = canonical_piece(arr, r.sign_vector, qp_add(p, q))
        if s is not None:
            pieces[r.sign_vector] = s
    out = BoxSpline(arr, pieces)
    return coarsen(out) if simplify else out


def bs_sum(items: Sequence[BoxSpline], dim: int, domain: str = NATURAL) -> BoxSpline:
    out = BoxSpline.zero(dim, domain)
    for F in items:
        out = bs_add(out, F)
    return out


# -- bounds -----------------------------------------------------------------------


@dataclass(frozen=True)
class MinRatio:
    """Upper end min_i form_i(x); typically (x_i - offset_i)/a_i over the support of a."""

    forms: tuple[AffineForm, ...]

    @classmethod
    def along(cls, a: Sequence[int], offsets: Sequence[int] | None = None) -> "MinRatio":
        if any(v < 0 for v in a) or not any(a):
            raise ValueError("MinRatio needs a nonzero direction with non-negative entries")
        dim = len(a)
        offsets = offsets or [0] * dim
        forms = []
        for i, ai in enumerate(a):
            if ai:
                coeffs = [Fraction(int(i == j), ai) for j in range(dim)]
                forms.append(AffineForm(coeffs, Fraction(-offsets[i], ai)))
        return cls(tuple(forms))


@dataclass(frozen=True, eq=False)
class PerRegionAffine:
    """Upper end given by one affine form per region of its own arrangement."""

    arrangement: Arrangement
    forms: Mapping[str, AffineForm] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class BoundSpec:
    kind: MinRatio | PerRegionAffine
    lower_closed: bool = True
    upper_closed: bool = True

    @classmethod
    def min_ratio(cls, a: Sequence[int], offsets: Sequence[int] | None = None, **flags) -> "BoundSpec":
        return cls(MinRatio.along(a, offsets), **flags)


def _cases(bound: BoundSpec, dim: int):
    """(closure constraints, form) pairs covering the domain.

    A constraint is (AffineForm, is_equality) meaning form >= 0 or form = 0.
    """
    kind = bound.kind
    if isinstance(kind, MinRatio):
        out = []
        for k, g in enumerate(kind.forms):
            cons = [(h - g, False) for l, h in enumerate(kind.forms) if l != k]
            out.append((cons, g))
        return out
    out = []
    barr = kind.arrangement
    for r in barr.regions():
        g = kind.forms.get(r.sign_vector)
        if g is None:
            raise ValueError(f"no bound form for region {r.sign_vector}")
        cons = []
        for p, s in zip(barr.planes, r.sign_vector):
            f = p.form()
            if s == "+":
                cons.append((f, False))
            elif s == "-":
                cons.append((-f, False))
            else:
                cons.append((f, True))
        out.append((cons, g))
    return out


def _bound_planes(bound: BoundSpec) -> list[Hyperplane]:
    kind = bound.kind
    out = []
    if isinstance(kind, MinRatio):
        for g1, g2 in itertools.combinations(kind.forms, 2):
            h = Hyperplane.from_form(g1 - g2)
            if h is not None:
                out.append(h)
        forms = kind.forms
    else:
        out.extend(kind.arrangement.planes)
        forms = list(kind.forms.values())
    for g in forms:
        h = Hyperplane.from_form(g)
        if h is not None:
            out.append(h)
    return out


def _strictly_feasible(dim: int, natural: bool, closed, strict, equal) -> bool:
    """Is there x (x >= 0 for N) with closed >= 0, equal = 0 and strict > 0?

    Each argument is a list of AffineForms.  Decided by maximising a common slack.
    """
    A, b, E, e = [], [], [], []
    for f in closed:
        A.append([-c for c in f.coeffs] + [0])
        b.append(f.const)
    for f in strict:
        A.append([-c for c in f.coeffs] + [1])
        b.append(f.const)
    A.append([0] * dim + [1])
    b.append(1)
    for f in equal:
        E.append(list(f.coeffs) + [0])
        e.append(-f.const)
    free = [dim] if natural else list(range(dim + 1))
    res = maximize([0] * dim + [1], A, b, E, e, free=free)
    return res.status == OPTIMAL and res.value > 0


def _relevant_planes(G: BoxSpline, a, bound: BoundSpec, base: set) -> list[Hyperplane]:
    """Planes {crossing_1 = crossing_2} and {crossing = bound} that can matter.

    A plane is kept when, inside some bound case, the two functionals
    coincide at a point where the common value lies strictly between 0 and
    the bound (for a crossing against the bound: where the bound is positive).
    """
    dim = G.dim
    natural = G.domain == NATURAL
    lams = []
    seen = set()
    for p in G.arrangement.planes:
        f = crossing_form(p, a)
        if f is not None and f not in seen:
            seen.add(f)
            lams.append(f)
    cases = _cases(bound, dim)
    found: list[Hyperplane] = []
    decided = set(base)

    def check(h, equal, strict):
        for cons, g in cases:
            closed = [f for f, eq in cons if not eq]
            eqs = [f for f, eq in cons if eq]
            if _strictly_feasible(dim, natural, closed, strict(g), eqs + [equal]):
                return True
        return False

    for f1, f2 in itertools.combinations(lams, 2):
        h = Hyperplane.from_form(f1 - f2)
        if h is None or h in decided:
            continue
        if check(h, f1 - f2, lambda g, f1=f1: [f1, g - f1]):
            decided.add(h)
            found.append(h)
    case_forms = []
    for _, g in cases:
        if g not in case_forms:
            case_forms.append(g)
    for f in lams:
        for g in case_forms:
            h = Hyperplane.from_form(f - g)
            if h is None or h in decided:
                continue
            if check(h, f - g, lambda g2: [g2]):
                decided.add(h)
                found.append(h)
    return found


def bs_line_sum(G: BoxSpline, a: Sequence[int], bound: BoundSpec, simplify: bool = True) -> BoxSpline:
    """S(x) = sum of G(x - l*a) over the integers l of the interval from 0 to the bound.

    The interval ends are closed or open according to ``bound``.  For the
    N domain, terms whose argument leaves N^t count as zero.
    """
    a = [int(v) for v in a]
    dim = G.dim
    if len(a) != dim:
        raise ValueError("direction has the wrong length")
    if not any(a):
        raise ValueError("zero direction")
    natural = G.domain == NATURAL
    per_region = isinstance(bound.kind, PerRegionAffine)
    if not per_region:
        if natural is False:
            raise ValueError("MinRatio bounds are only defined on the N domain")
        if any(v < 0 for v in a):
            raise ValueError("MinRatio bounds need a non-negative direction")
    else:
        barr = bound.kind.arrangement
        if barr.dim != dim:
            raise ValueError("bound arrangement dimension mismatch")

    base = list(G.arrangement.planes) + _bound_planes(bound)
    base_set = set(base)
    extra = _relevant_planes(G, a, bound, base_set)
    arr = Arrangement(dim, base + extra, G.domain)

    lams = []
    for p in G.arrangement.planes:
        f = crossing_form(p, a)
        if f is not None and f not in lams:
            lams.append(f)
    if per_region:
        bidx = [arr.index(p) for p in barr.planes]
    zero_form = AffineForm([0] * dim, 0)
    cache: dict = {}

    def F(p: QuasiPolynomial, form: AffineForm) -> QuasiPolynomial:
        key = (p, form)
        v = cache.get(key)
        if v is None:
            v = line_partial_sum(p, a, form)
            cache[key] = v
        return v

    def below(form: AffineForm) -> AffineForm:
        return form.shift(Fraction(-1, form.denominator()))

    pieces = {}
    for region in arr.regions():
        w = [Fraction(v) for v in region.point]
        if per_region:
            g = bound.kind.forms.get(_project(region.sign_vector, bidx))
            if g is None:
                raise ValueError(f"no bound form for region {region.sign_vector}")
        else:
            g = min(bound.kind.forms, key=lambda f: f.eval(w))
        gv = g.eval(w)
        if gv < 0:
            if per_region:
                raise ValueError(f"bound is negative at {region.point}")
            continue
        # distinct crossing values strictly inside (0, g(w)), each with a form realising it
        inside = {}
        for f in lams:
            v = f.eval(w)
            if 0 < v < gv and v not in inside:
                inside[v] = f
        points = [(Fraction(0), zero_form)] + sorted(inside.items(), key=lambda kv: kv[0])
        if gv > 0:
            points.append((gv, g))
        # elements: (is_singleton, low point, high point); singletons have low == high
        elems = []
        for i, pt in enumerate(points):
            if i > 0:
                elems.append((False, points[i - 1], pt))
            last = i == len(points) - 1
            if i == 0 and not bound.lower_closed:
                continue
            if last and not bound.upper_closed:
                continue
            elems.append((True, pt, pt))
        if not elems:
            continue
        # piece of G met by each element
        tagged = []
        for single, lo, hi in elems:
            lam = lo[0] if single else (lo[0] + hi[0]) / 2
            y = [wi - lam * ai for wi, ai in zip(w, a)]
            if natural and any(v < 0 for v in y):
                q = None
            else:
                q = G.pieces.get(G.arrangement.signs(y))
            tagged.append((q, single, lo, hi))
        terms = []
        i = 0
        while i < len(tagged):
            q = tagged[i][0]
            j = i
            while j + 1 < len(tagged) and tagged[j + 1][0] == q:
                j += 1
            if q is not None:
                _, s_first, lo, _ = tagged[i]
                _, s_last, _, hi = tagged[j]
                upper = hi[1] if s_last else below(hi[1])
                terms.append(F(q, upper))
                if s_first:
                    if lo[0] != 0 or lo[1] != zero_form:
                        terms.append(-F(q, below(lo[1])))
                else:
                    terms.append(-F(q, lo[1]))
            i = j + 1
        total = canonical_piece(arr, region.sign_vector, qp_sum(terms, dim))
        if total is not None:
            pieces[region.sign_vector] = total
    out = BoxSpline(arr, pieces)
    return coarsen(out) if simplify else out


# -- pullbacks ------------------------------------------------------------------------


def _pullback(F: BoxSpline, matrix: Sequence[Sequence[int]], src_dim: int, domain: str) -> BoxSpline:
    """x' -> F(matrix @ x'); outside N^t an N-domain F counts as zero."""
    t = F.dim
    planes = []
    for h in F.arrangement.planes:
        normal = [sum(h.normal[i] * matrix[i][j] for i in range(t)) for j in range(src_dim)]
        if any(normal):
            planes.append(Hyperplane(tuple(normal), h.constant))
    arr = Arrangement(src_dim, planes, domain)
    zero_ext = F.domain == NATURAL
    cache = {}
    pieces = {}
    for r in arr.regions():
        y = [sum(matrix[i][j] * r.point[j] for j in range(src_dim)) for i in range(t)]
        if zero_ext and any(v < 0 for v in y):
            continue
        q = F.pieces.get(F.arrangement.signs(y))
        if q is None:
            continue
        if q not in cache:
            cache[q] = qp_pullback(q, matrix, src_dim)
        q = canonical_piece(arr, r.sign_vector, cache[q])
        if q is not None:
            pieces[r.sign_vector] = q
    return coarsen(BoxSpline(arr, pieces))


def bs_specialize(F: BoxSpline, t1: int, h: int) -> BoxSpline:
    """G(x_1..x_t1) = F(x_1..x_t1, h*x_1, ..., h*x_1)."""
    t = F.dim
    if not 1 <= t1 <= t:
        raise ValueError("t1 must lie between 1 and the dimension")
    if h < 0:
        raise ValueError("h must be non-negative")
    matrix = [[int(i == j) for j in range(t1)] for i in range(t1)]
    matrix += [[h if j == 0 else 0 for j in range(t1)] for _ in range(t - t1)]
    return _pullback(F, matrix, t1, F.domain)


def bs_reflect(F: BoxSpline, alpha: Sequence[int]) -> BoxSpline:
    """R(x) = F(alpha_1 x_1, ..., alpha_t x_t) for alpha in {+1, -1}^t.

    Reflecting an N-domain spline by a non-trivial alpha yields a Z-domain
    spline that vanishes off the reflected orthant.
    """
    if len(alpha) != F.dim or any(v not in (1, -1) for v in alpha):
        raise ValueError("alpha must be a vector of +1/-1 of the right length")
    if all(v == 1 for v in alpha):
        return F
    matrix = [[alpha[i] if i == j else 0 for j in range(F.dim)] for i in range(F.dim)]
    return _pullback(F, matrix, F.dim, INTEGER)


def bs_to_integer_domain(F: BoxSpline) -> BoxSpline:
    """Zero extension of an N-domain spline to Z^t."""
    if F.domain == INTEGER:
        return F
    ident = [[int(i == j) for j in range(F.dim)] for i in range(F.dim)]
    return _pullback(F, ident, F.dim, INTEGER)


# -- simplification ---------------------------------------------------------------------


def coarsen(F: BoxSpline) -> BoxSpline:
    """Drop non-coordinate planes across which the function does not change.

    Pieces are compared as functions on the integer points of each region,
    so a plane goes away when the pieces on both sides and on the plane
    itself agree there.
    """
    arr = F.arrangement
    dim = arr.dim
    planes = list(arr.planes)
    regions = [(r.sign_vector, r.point) for r in arr.regions()]
    pieces = dict(F.pieces)
    changed = True
    any_change = False
    while changed:
        changed = False
        for k in range(len(planes) - 1, dim - 1, -1):
            merged = _try_merge(planes, regions, pieces, k, dim)
            if merged is not None:
                regions, pieces = merged
                del planes[k]
                changed = any_change = True
    if not any_change:
        return F
    new_arr = Arrangement(dim, planes, arr.domain)
    new_arr.set_regions(RegionWitness(sv, pt) for sv, pt in regions)
    return BoxSpline(new_arr, pieces)


def _try_merge(planes, regions, pieces, k, dim):
    groups: dict[str, list] = defaultdict(list)
    for sv, pt in regions:
        groups[sv[:k] + sv[k + 1:]].append((sv, pt))
    rest = planes[:k] + planes[k + 1:]
    new_regions = []
    new_pieces = {}
    for key, members in groups.items():
        hull = _hull(_zero_planes(rest, key), dim)
        side = [sv for sv, _ in members if sv[k] != "0"]
        on = [sv for sv, _ in members if sv[k] == "0"]
        if hull is None:
            rep = None
        elif side:
            cands = {_restrict(pieces[sv], hull) if sv in pieces else None for sv in side}
            cands = {c if c is not None and not c.is_zero() else None for c in cands}
            if len(cands) != 1:
                return None
            rep = cands.pop()
            for sv in on:
                h0 = _hull(_zero_planes(planes, sv), dim)
                if h0 is None:
                    continue
                mine = pieces.get(sv)
                mine = _restrict(mine, h0) if mine is not None else None
                theirs = _restrict(rep, h0) if rep is not None else None
                if (mine if mine is not None and not mine.is_zero() else None) != \
                        (theirs if theirs is not None and not theirs.is_zero() else None):
                    return None
        else:
            rep = pieces.get(on[0])
        pt = next((p for _, p in members if all(isinstance(v, int) for v in p)), members[0][1])
        new_regions.append((key, pt))
        if rep is not None:
            new_pieces[key] = rep
    return new_regions, new_pieces
