"""Rational hyperplane arrangements, sign vectors and region enumeration."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .lattice import column_reduce, integer_solutions
from .lp import OPTIMAL, _maximize_free, maximize
from .poly import Q, AffineForm, to_fraction

NATURAL = "N"
INTEGER = "Z"


def _sign(v) -> str:
    return "+" if v > 0 else ("-" if v < 0 else "0")


class DomainError(ValueError):
    """A point lies outside the domain of an arrangement or box spline."""


@dataclass(frozen=True, order=True)
class Hyperplane:
    """{x : normal . x + constant = 0} in canonical integer form."""

    normal: tuple[int, ...]
    constant: int = 0

    def __post_init__(self):
        normal = tuple(int(v) for v in self.normal)
        if not any(normal):
            raise ValueError("hyperplane normal must be nonzero")
        g = gcd(*normal, int(self.constant))
        first = next(v for v in normal if v)
        if first < 0:
            g = -g
        object.__setattr__(self, "normal", tuple(v // g for v in normal))
        object.__setattr__(self, "constant", int(self.constant) // g)

    @classmethod
    def from_form(cls, form: AffineForm) -> "Hyperplane | None":
        """Canonical plane {form = 0}; None when the form is constant."""
        if form.is_constant():
            return None
        den = form.denominator()
        return cls(tuple(int(c * den) for c in form.coeffs), int(form.const * den))

    @classmethod
    def coordinate(cls, dim: int, i: int) -> "Hyperplane":
        return cls(tuple(int(j == i) for j in range(dim)), 0)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence) -> Fraction:
        return sum((a * v for a, v in zip(self.normal, x) if a), self.constant)

    def form(self) -> AffineForm:
        return AffineForm(self.normal, self.constant)

    def is_coordinate(self) -> bool:
        return self.constant == 0 and sum(1 for v in self.normal if v) == 1

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return self.form().to_str(names)


@dataclass(frozen=True)
class RegionWitness:
    sign_vector: str
    point: tuple

    @property
    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.point)


class Arrangement:
    """Ordered, duplicate-free family of hyperplanes over N^dim or Z^dim.

    The coordinate hyperplanes always come first, in coordinate order.
    """

    def __init__(self, dim: int, planes: Iterable[Hyperplane] = (), domain: str = NATURAL):
        if domain not in (NATURAL, INTEGER):
            raise ValueError("domain must be 'N' or 'Z'")
        self.dim = dim
        self.domain = domain
        ordered = [Hyperplane.coordinate(dim, i) for i in range(dim)]
        seen = set(ordered)
        for p in planes:
            if p.dim != dim:
                raise ValueError("hyperplane dimension mismatch")
            if p not in seen:
                seen.add(p)
                ordered.append(p)
        self.planes: tuple[Hyperplane, ...] = tuple(ordered)
        self._index = {p: i for i, p in enumerate(self.planes)}

    def __eq__(self, other):
        return (isinstance(other, Arrangement) and self.dim == other.dim
                and self.domain == other.domain and self.planes == other.planes)

    def __hash__(self):
        return hash((self.dim, self.domain, self.planes))

    def __len__(self):
        return len(self.planes)

    def __repr__(self):
        body = ", ".join(p.to_str() + " = 0" for p in self.planes)
        return f"Arrangement({self.domain}^{self.dim}: {body})"

    def index(self, plane: Hyperplane) -> int:
        return self._index[plane]

    def __contains__(self, plane) -> bool:
        return plane in self._index

    @cached_property
    def is_conic(self) -> bool:
        return all(p.constant == 0 for p in self.planes)

    def in_domain(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            return False
        return self.domain == INTEGER or all(v >= 0 for v in x)

    def signs(self, x: Sequence) -> str:
        """Sign vector of any rational point (no domain check)."""
        return "".join(_sign(p.value(x)) for p in self.planes)

    def regions(self) -> list[RegionWitness]:
        cached = self.__dict__.get("_regions")
        if cached is None:
            cached = _enumerate_flats(self)
            self.__dict__["_regions"] = cached
        return cached

    @cached_property
    def region_map(self) -> dict[str, RegionWitness]:
        return {r.sign_vector: r for r in self.regions()}

    def set_regions(self, regions: Iterable[RegionWitness]):
        """Install a region list derived elsewhere (e.g. by merging a finer arrangement)."""
        self.__dict__["_regions"] = sorted(regions, key=lambda r: r.sign_vector)
        self.__dict__.pop("region_map", None)


def sign_vector_of(arr: Arrangement, x: Sequence[int]) -> str:
    if len(x) != arr.dim:
        raise DomainError(f"expected a point with {arr.dim} coordinates")
    if not arr.in_domain(x):
        raise DomainError(f"point {tuple(x)} is outside N^{arr.dim}")
    return arr.signs(x)


def enumerate_regions(arr: Arrangement) -> list[RegionWitness]:
    """One witness per region that contains a point of the domain lattice, sorted by sign vector."""
    return arr.regions()


def refine(a: Arrangement, b: Arrangement) -> Arrangement:
    if a.dim != b.dim or a.domain != b.domain:
        raise ValueError("arrangements differ in dimension or domain")
    if a.planes == b.planes:
        return a
    return Arrangement(a.dim, a.planes + b.planes, a.domain)


def crossing_form(plane: Hyperplane, a: Sequence[int]) -> AffineForm | None:
    """x -> the real lambda with plane(x - lambda*a) = 0, or None when the line is parallel."""
    gamma = sum(b * v for b, v in zip(plane.normal, a))
    if gamma == 0:
        return None
    return AffineForm(plane.normal, plane.constant).scale(Fraction(1, gamma))


def line_refinement(arr: Arrangement, a: Sequence[int], extra_forms: Sequence[AffineForm] = ()) -> Arrangement:
    """Add the planes on which two crossing parameters along ``a`` coincide.

    For each extra bound form g the planes g = 0 and {crossing = g} are added too.
    """
    if not any(a):
        raise ValueError("direction must be nonzero")
    lams = [f for f in (crossing_form(p, a) for p in arr.planes) if f is not None]
    new = []
    for f1, f2 in itertools.combinations(lams, 2):
        h = Hyperplane.from_form(f1 - f2)
        if h is not None:
            new.append(h)
    for g in extra_forms:
        h = Hyperplane.from_form(g)
        if h is not None:
            new.append(h)
        for f in lams:
            h = Hyperplane.from_form(f - g)
            if h is not None:
                new.append(h)
    return Arrangement(arr.dim, arr.planes + tuple(new), arr.domain)


# -- region enumeration -----------------------------------------------------------
#
# Two independent enumerators.  The default one works on the lattice of flats of
# the (homogenised) central arrangement and uses integer arithmetic only; the
# LP-driven depth-first search below it is kept as a cross-check.


def _primitive(v):
    g = gcd(*v)
    if g == 0:
        return tuple(v)
    first = next(x for x in v if x)
    if first < 0:
        g = -g
    return tuple(x // g for x in v)


def _enumerate_flats(arr: Arrangement) -> list[RegionWitness]:
    """All faces of the arrangement in its domain, one witness each.

    An affine arrangement in Q^t is the slice x_0 = 1 of a central one in
    Q^(t+1).  The faces of a central arrangement lying in a flat L are those of
    the flats L cut by one more hyperplane, plus the open chambers of L; every
    chamber has a facet, so it is reached by stepping off a facet to either
    side.  Only faces inside the closed domain (the orthant for N, x_0 >= 0
    after homogenising) are kept along the way.
    """
    t = arr.dim
    homog = not arr.is_conic
    normals = [list(p.normal) + ([p.constant] if homog else []) for p in arr.planes]
    guard = set(range(t)) if arr.domain == NATURAL else set()
    if homog:
        normals.append([0] * t + [1])
        guard.add(len(normals) - 1)
    D = len(normals[0])
    M = len(normals)

    def sig_of(vals):
        return "".join("+" if v > 0 else ("-" if v < 0 else "0") for v in vals)

    def admissible(vals):
        return all(vals[i] >= 0 for i in guard)

    # faces(key) maps the sign vector of every face inside the flat cut out by the
    # planes in ``key`` to (point, values of all plane forms at the point)
    memo: dict[frozenset, dict[str, tuple[list[int], list[int]]]] = {}

    def faces(key: frozenset):
        got = memo.get(key)
        if got is not None:
            return got
        out: dict[str, tuple[list[int], list[int]]] = {}
        if key:
            B = integer_solutions([normals[i] for i in sorted(key)], [0] * len(key), D)[1]
        else:
            B = [[int(i == j) for j in range(D)] for i in range(D)]
        r = len(B[0]) if B else 0
        classes: dict[tuple, list[int]] = {}
        for j in range(M):
            if j in key:
                continue
            c = [sum(normals[j][i] * B[i][k] for i in range(D) if normals[j][i]) for k in range(r)]
            if any(c):
                classes.setdefault(_primitive(c), []).append(j)
        if not classes:
            out["0" * M] = ([0] * D, [0] * M)
            memo[key] = out
            return out
        for c, members in classes.items():
            sub = key | frozenset(members)
            sub_faces = faces(sub)
            for sig, pv in sub_faces.items():
                out.setdefault(sig, pv)
            # chambers of this flat next to the facets lying in the sub-flat
            u = [sum(B[i][k] * c[k] for k in range(r)) for i in range(D)]
            nu = [sum(a * b for a, b in zip(n, u) if a) for n in normals]
            nsub = len(sub)
            for sig, (p, vals) in sub_faces.items():
                if sig.count("0") != nsub:
                    continue
                k = 1
                for vp, vu in zip(vals, nu):
                    if vu and vp:
                        k = max(k, abs(vu) // abs(vp) + 1)
                for sg in (1, -1):
                    qv = [k * a + sg * b for a, b in zip(vals, nu)]
                    if not admissible(qv):
                        continue
                    qs = sig_of(qv)
                    if qs in out:
                        continue
                    q = [k * a + sg * b for a, b in zip(p, u)]
                    g = gcd(*q)
                    if g > 1:
                        q = [v // g for v in q]
                        qv = [v // g for v in qv]
                    out[qs] = (q, qv)
        memo[key] = out
        return out

    result = []
    for sig, (p, _) in faces(frozenset()).items():
        if homog:
            if sig[-1] != "+":
                continue
            w = _witness(arr, sig[:-1], [Q(v, p[-1]) for v in p[:-1]])
            if w is not None:
                result.append(w)
        else:
            result.append(RegionWitness(sig, tuple(p)))
    result.sort(key=lambda r: r.sign_vector)
    return result


_ZERO = Q(0)


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v) if a and b), _ZERO)


def _enumerate(arr: Arrangement) -> list[RegionWitness]:
    t = arr.dim
    planes = arr.planes
    m = len(planes)
    natural = arr.domain == NATURAL
    out: list[RegionWitness] = []
    one = Q(1)
    ident = [[one if i == j else _ZERO for j in range(t)] for i in range(t)]

    # x = P z + q with z in Q^r; strict constraints g(z) = coef . z + const > 0;
    # w is a point of the relative interior of the current face (in z-coordinates).
    def rec(k, P, q, strict, w, signs):
        if k == m:
            x = [_dot(row, w) + qi for row, qi in zip(P, q)]
            wit = _witness(arr, signs, x)
            if wit is not None:
                out.append(wit)
            return
        h = planes[k]
        r = len(w)
        alpha = [sum((h.normal[i] * P[i][j] for i in range(t) if h.normal[i]), _ZERO)
                 for j in range(r)]
        beta = _dot(h.normal, q) + h.constant
        allowed = "+0" if natural and k < t else "+0-"
        if not any(alpha):
            s = _sign(beta)
            if s in allowed:
                rec(k + 1, P, q, strict, w, signs + s)
            return
        val = _dot(alpha, w) + beta
        if val == 0:
            for s in allowed:
                if s == "0":
                    _recurse_zero(k, P, q, strict, w, signs, alpha, beta)
                else:
                    sg = 1 if s == "+" else -1
                    v = [sg * c for c in alpha]
                    eps = _step(strict, w, v)
                    w2 = [wi + eps * vi for wi, vi in zip(w, v)]
                    rec(k + 1, P, q, strict + [([sg * c for c in alpha], sg * beta)], w2, signs + s)
            return
        s0 = _sign(val)
        sg0 = 1 if s0 == "+" else -1
        if s0 in allowed:
            rec(k + 1, P, q, strict + [([sg0 * c for c in alpha], sg0 * beta)], w, signs + s0)
        other = "-" if s0 == "+" else "+"
        want_other = other in allowed
        want_zero = "0" in allowed
        if not (want_other or want_zero):
            return
        sg = -sg0
        z = _strict_point(strict + [([sg * c for c in alpha], sg * beta)], r)
        if z is None:
            return
        if want_zero:
            vz = _dot(alpha, z) + beta
            theta = val / (val - vz)
            w0 = [wi + theta * (zi - wi) for wi, zi in zip(w, z)]
            _recurse_zero(k, P, q, strict, w0, signs, alpha, beta)
        if want_other:
            rec(k + 1, P, q, strict + [([sg * c for c in alpha], sg * beta)], z, signs + other)

    def _recurse_zero(k, P, q, strict, w, signs, alpha, beta):
        j = next(i for i, c in enumerate(alpha) if c)
        r = len(w)
        # z_j = -(beta + sum_{i != j} alpha_i z_i) / alpha_j; z' = z without j
        aj = alpha[j]
        E = []
        for i in range(r):
            if i == j:
                E.append([-alpha[c] / aj for c in range(r) if c != j])
            else:
                E.append([one if c == i else _ZERO for c in range(r) if c != j])
        f = [_ZERO] * r
        f[j] = -beta / aj
        P2 = [[_dot(row, [E[i][c] for i in range(r)]) for c in range(r - 1)] for row in P]
        q2 = [_dot(row, f) + qi for row, qi in zip(P, q)]
        strict2 = [([_dot(coef, [E[i][c] for i in range(r)]) for c in range(r - 1)], _dot(coef, f) + const)
                   for coef, const in strict]
        w2 = [wi for i, wi in enumerate(w) if i != j]
        rec(k + 1, P2, q2, strict2, w2, signs + "0")

    rec(0, ident, [_ZERO] * t, [], [_ZERO] * t, "")
    out.sort(key=lambda r: r.sign_vector)
    return out


def _step(strict, w, v):
    eps = Q(1)
    for coef, const in strict:
        gv = _dot(coef, v)
        if gv < 0:
            gw = _dot(coef, w) + const
            eps = min(eps, gw / (-2 * gv))
    return eps


def _strict_point(strict, r):
    """A point with every constraint strictly positive, or None (exact LP on the min slack)."""
    # variables z_1..z_r (free), s; maximise s subject to coef.z + const >= s, s <= 1
    A = [[-c for c in coef] + [1] for coef, _ in strict]
    b = [const for _, const in strict]
    A.append([0] * r + [1])
    b.append(1)
    c = [0] * r + [1]
    # always feasible (s can be very negative) and bounded (s <= 1)
    status, value, x = _maximize_free(c, A, b)
    if status != OPTIMAL or value <= 0:
        return None
    return x[:r]


def _witness(arr: Arrangement, signs: str, x: list) -> RegionWitness | None:
    """Integer witness for the face through the rational point x, or None if it has none."""
    if all(v.denominator == 1 for v in x):
        return RegionWitness(signs, tuple(int(v) for v in x))
    if arr.is_conic:
        d = 1
        for v in x:
            d = lcm(d, int(v.denominator))
        return RegionWitness(signs, tuple(int(v * d) for v in x))
    y = _integer_point(arr, signs, x)
    return None if y is None else RegionWitness(signs, y)


def _integer_point(arr: Arrangement, signs: str, x: list):
    """An integer point with the given sign vector, searched near the rational point x.

    The face's integer points are x0 + B z (z integer) on its affine hull; a strict
    inequality f > 0 between integers is f >= 1.  Rounding z(x) is tried first.
    """
    t = arr.dim
    zero = [p for p, sg in zip(arr.planes, signs) if sg == "0"]
    if zero:
        sol = integer_solutions([p.normal for p in zero], [p.constant for p in zero], t)
        if sol is None:
            return None
        x0, B, coords = sol
    else:
        x0 = [0] * t
        B = [[int(i == j) for j in range(t)] for i in range(t)]
        coords = B
    r = len(coords)
    rows, consts = [], []
    for p, sg in zip(arr.planes, signs):
        if sg == "0":
            continue
        e = 1 if sg == "+" else -1
        rows.append([e * sum(p.normal[i] * B[i][k] for i in range(t)) for k in range(r)])
        consts.append(e * (sum(n * v for n, v in zip(p.normal, x0)) + p.constant))

    def ok(z):
        return all(sum(a * b for a, b in zip(row, z)) + c >= 1 for row, c in zip(rows, consts))

    def lift(z):
        return tuple(x0[i] + sum(B[i][k] * z[k] for k in range(r)) for i in range(t))

    if r == 0:
        return lift(()) if ok(()) else None
    zx = [sum(c * (v - o) for c, v, o in zip(row, x, x0)) for row in coords]
    base = [int(v.__floor__()) for v in zx]
    for delta in itertools.product((0, 1), repeat=r):
        z = [b + d for b, d in zip(base, delta)]
        if ok(z):
            return lift(z)
    z = _lattice_point(rows, [1 - c for c in consts], r)
    return None if z is None else lift(z)


def _tighten(R, b):
    """Divide each row of R z >= b by its content and round b up; None if plainly empty."""
    rows, rhs = [], []
    best: dict[tuple, int] = {}
    for row, bi in zip(R, b):
        g = gcd(*row)
        if g == 0:
            if bi > 0:
                return None
            continue
        row = tuple(v // g for v in row)
        bi = -((-bi) // g)  # ceil
        if best.get(row, bi - 1) >= bi:
            continue
        best[row] = bi
    for row, bi in best.items():
        opp = best.get(tuple(-v for v in row))
        if opp is not None and bi > -opp:
            return None  # an empty strip between two parallel planes
        rows.append(list(row))
        rhs.append(bi)
    return rows, rhs


def _lattice_point(R, b, r: int):
    """An integer z with R z >= b, or None; terminates on unbounded polyhedra too.

    The recession cone C = {R z >= 0} is full-dimensional inside its span L.  After a
    unimodular change of variables z = V (u, v) with L = {u = 0}, the projection onto
    u is bounded, so branching on u alone is finite; and once u is integral and its
    fibre is nonempty, walking along a direction interior to C and rounding reaches an
    integer point of the fibre.
    """
    tight = _tighten(R, b)
    if tight is None:
        return None
    R, b = tight
    m = len(R)
    if m == 0:
        return [0] * r
    # a deep point rounds to an integer one: max s with R z >= b + s, s <= cap
    cap = max(sum(abs(v) for v in row) for row in R)
    status, value, x = _maximize_free([0] * r + [1], [[-v for v in row] + [1] for row in R] + [[0] * r + [1]],
                                      [-v for v in b] + [cap])
    if value < 0:
        return None
    z = [int(round(v)) for v in x[:r]]
    if all(sum(a * v for a, v in zip(row, z)) >= bi for row, bi in zip(R, b)):
        return z
    # one LP: max sum s_i with R z >= s, 0 <= s <= 1 has s_i = 1 exactly off the
    # implicit equalities of C, and its z is interior to C relative to L
    A = [[-v for v in row] + [int(k == i) for k in range(m)] for i, row in enumerate(R)]
    A += [[0] * r + [int(k == i) for k in range(m)] for i in range(m)]
    res = maximize([0] * r + [1] * m, A, [0] * m + [1] * m, free=list(range(r)))
    implicit = [R[i] for i in range(m) if res.x[r + i] != 1]
    d = res.x[:r]
    _, V, Vinv, _, rank = column_reduce(implicit, r)
    # in w = V^-1 z coordinates the u-part is w[:rank], the v-part w[rank:]
    RV = [[sum(row[i] * V[i][k] for i in range(r)) for k in range(r)] for row in R]
    dv = [sum(Vinv[k][i] * d[i] for i in range(r)) for k in range(rank, r)]

    def feasible(w):
        return all(sum(a * x for a, x in zip(row, w)) >= bi for row, bi in zip(RV, b))

    A0 = [[-v for v in row] for row in RV]
    b0 = [-v for v in b]
    stack = [[]]
    while stack:
        extra = stack.pop()
        res = maximize([0] * r, A0 + [row for row, _ in extra], b0 + [v for _, v in extra], free=True)
        if res.status != OPTIMAL:
            continue
        w = res.x
        j = next((k for k in range(rank) if w[k].denominator != 1), -1)
        if j >= 0:
            lo = w[j].__floor__()
            unit = [int(k == j) for k in range(r)]
            stack.append(extra + [([-v for v in unit], -(lo + 1))])
            stack.append(extra + [(unit, lo)])
            continue
        u = [int(v) for v in w[:rank]]
        k = 0
        while True:
            v = [round(x + k * y) for x, y in zip(w[rank:], dv)]
            if feasible(u + v):
                wz = u + v
                return [sum(V[i][c] * wz[c] for c in range(r)) for i in range(r)]
            k = 2 * k or 1
    return None
