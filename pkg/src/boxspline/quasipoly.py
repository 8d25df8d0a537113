"""Quasi-polynomials: one rational polynomial per coset of a full-rank lattice.

With the box lattice d*Z^t this is the textbook period-d residue table;
the lattice form is kept because it stays small when the dispatch depends
on a few congruences only.  Every constructor returns the canonical form
(coarsest lattice on which the table is still polynomial per coset),
so structural equality coincides with equality as functions on Z^t.
"""
from __future__ import annotations

from fractions import Fraction
from math import floor, lcm
from typing import Iterable, Mapping, Sequence

from .lattice import Lattice, congruence_lattice
from .poly import Q, AffineForm, Poly, as_rational, poly_sum_over_index, to_fraction


class QuasiPolynomial:
    __slots__ = ("dim", "lattice", "table", "_hash")

    def __init__(self, dim: int, lattice: Lattice, table: Mapping[tuple[int, ...], Poly],
                 normalize: bool = True):
        if lattice.dim != dim:
            raise ValueError("lattice dimension mismatch")
        self.dim = dim
        self.lattice = lattice
        clean = {}
        for r, p in table.items():
            if p.nvars != dim:
                raise ValueError("polynomial variable count must equal the dimension")
            if p.terms:
                clean[lattice.reduce(r)] = p
        self.table = clean
        self._hash = None
        if normalize:
            self._normalize()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "QuasiPolynomial":
        return cls(dim, Lattice.box(dim), {}, normalize=False)

    @classmethod
    def from_poly(cls, p: Poly) -> "QuasiPolynomial":
        return cls(p.nvars, Lattice.box(p.nvars), {(0,) * p.nvars: p}, normalize=False)

    @classmethod
    def constant(cls, dim: int, c) -> "QuasiPolynomial":
        return cls.from_poly(Poly.constant(dim, c))

    @classmethod
    def from_residues(cls, dim: int, period: int, table: Mapping[tuple[int, ...], Poly],
                      normalize: bool = True) -> "QuasiPolynomial":
        """Classical residue table: key (r_1..r_t) with 0 <= r_i < period."""
        return cls(dim, Lattice.box(dim, period), table, normalize=normalize)

    # -- basic protocol ---------------------------------------------------------

    @property
    def period(self) -> int:
        """Smallest d such that the polynomial only depends on x mod d."""
        return self.lattice.exponent

    def is_zero(self) -> bool:
        return not self.table

    def poly_at(self, x: Sequence[int]) -> Poly:
        return self.table.get(self.lattice.reduce(x)) or Poly.zero(self.dim)

    def __call__(self, *x):
        return self.eval(x)

    def eval(self, x: Sequence[int]) -> Fraction:
        if len(x) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates")
        x = [int(v) for v in x]
        p = self.table.get(self.lattice.reduce(x))
        return to_fraction(p.eval(x)) if p is not None else Fraction(0)

    def __eq__(self, other):
        return (isinstance(other, QuasiPolynomial) and self.dim == other.dim
                and self.lattice == other.lattice and self.table == other.table)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, self.lattice, frozenset(self.table.items())))
        return self._hash

    def __repr__(self):
        if not self.table:
            return "QuasiPolynomial(0)"
        if len(self.table) == 1 and self.lattice.index == 1:
            return f"QuasiPolynomial({next(iter(self.table.values())).to_str()})"
        return f"QuasiPolynomial(period={self.period}, {len(self.table)} cosets)"

    def __add__(self, other):
        return qp_add(self, other)

    def __neg__(self):
        return QuasiPolynomial(self.dim, self.lattice, {r: -p for r, p in self.table.items()},
                               normalize=False)

    def __sub__(self, other):
        return qp_add(self, -other)

    def scale(self, c) -> "QuasiPolynomial":
        c = as_rational(c)
        return QuasiPolynomial(self.dim, self.lattice, {r: p * c for r, p in self.table.items()},
                               normalize=False)

    def to_residue_table(self, period: int | None = None) -> dict[tuple[int, ...], Poly]:
        """Expand into the box form: residue vector mod ``period`` -> polynomial."""
        d = self.period if period is None else period
        if d % self.period:
            raise ValueError("period must be a multiple of the quasi-polynomial's period")
        box = Lattice.box(self.dim, d)
        out = {}
        for r in box.cosets():
            p = self.table.get(self.lattice.reduce(r))
            if p is not None:
                out[r] = p
        return out

    def is_integer_valued(self) -> bool:
        """Checks each coset polynomial at its representative and one step along each basis row."""
        for r, p in self.table.items():
            pts = [r] + [tuple(a + b for a, b in zip(r, row)) for row in self.lattice.basis]
            for pt in pts:
                if p.eval(pt).denominator != 1:
                    return False
        return True

    # -- canonical form ---------------------------------------------------------

    def _normalize(self):
        lat = self.lattice
        if lat.index == 1:
            return
        if not self.table:
            self.lattice = Lattice.box(self.dim)
            return
        reps = list(lat.cosets())
        ids: dict[Poly, int] = {}
        code = {}
        for r in reps:
            p = self.table.get(r)
            code[r] = 0 if p is None else ids.setdefault(p, len(ids) + 1)
        if len(set(code.values())) == 1:
            p = next(iter(self.table.values()))
            self.lattice = Lattice.box(self.dim)
            self.table = {(0,) * self.dim: p}
            return
        # invariance group of the table inside Z^t / lattice: every invariance maps a
        # coset of the rarest polynomial onto another coset of that polynomial
        classes: dict[int, list] = {}
        for r in reps:
            classes.setdefault(code[r], []).append(r)
        smallest = min(classes.values(), key=len)
        r0 = smallest[0]
        new = lat
        reduce = lat.reduce
        for r in smallest[1:]:
            g = tuple(a - b for a, b in zip(r, r0))
            if new.contains(g):
                continue  # already generated by the invariances found so far
            if all(code[reduce([a + b for a, b in zip(x, g)])] == cx for x, cx in code.items()):
                new = new.join([g])
        if new is lat:
            return
        table = {}
        for r, p in self.table.items():
            table.setdefault(new.reduce(r), p)
        self.lattice = new
        self.table = table


# -- operations ---------------------------------------------------------------


def qp_add(f1: QuasiPolynomial, f2: QuasiPolynomial, normalize: bool = True) -> QuasiPolynomial:
    """Pointwise sum over the common refinement of both lattices."""
    if f1.dim != f2.dim:
        raise ValueError("dimension mismatch")
    if not f2.table:
        return f1
    if not f1.table:
        return f2
    lat = f1.lattice.intersect(f2.lattice)
    table = {}
    zero = Poly.zero(f1.dim)
    for r in lat.cosets():
        p = f1.table.get(f1.lattice.reduce(r), zero) + f2.table.get(f2.lattice.reduce(r), zero)
        if p.terms:
            table[r] = p
    return QuasiPolynomial(f1.dim, lat, table, normalize=normalize)


def qp_sum(items: Iterable[QuasiPolynomial], dim: int) -> QuasiPolynomial:
    items = [q for q in items if q.table]
    if not items:
        return QuasiPolynomial.zero(dim)
    lat = items[0].lattice
    for q in items[1:]:
        lat = lat.intersect(q.lattice)
    zero = Poly.zero(dim)
    table = {}
    for r in lat.cosets():
        p = zero
        for q in items:
            p = p + q.table.get(q.lattice.reduce(r), zero)
        if p.terms:
            table[r] = p
    return QuasiPolynomial(dim, lat, table)


def qp_rebase(family: Mapping[tuple[int, ...], QuasiPolynomial], d: int | Lattice,
              dim: int | None = None, normalize: bool = True) -> QuasiPolynomial:
    """Glue a family indexed by residues mod ``d`` (or cosets of a lattice) into one quasi-polynomial.

    On x with residue class r the result agrees with ``family[r]`` (zero if absent).
    """
    if dim is None:
        if not family:
            raise ValueError("dimension required for an empty family")
        dim = next(iter(family.values())).dim
    base = d if isinstance(d, Lattice) else Lattice.box(dim, d)
    members = {base.reduce(k): v for k, v in family.items()}
    lat = base
    for q in members.values():
        lat = lat.intersect(q.lattice)
    table = {}
    for r in lat.cosets():
        q = members.get(base.reduce(r))
        if q is None:
            continue
        p = q.table.get(q.lattice.reduce(r))
        if p is not None:
            table[r] = p
    return QuasiPolynomial(dim, lat, table, normalize=normalize)


def floor_affine(form: AffineForm, mode: str = "floor") -> QuasiPolynomial:
    """Quasi-polynomial equal to floor(form(x)) (or ceil) at every integer point."""
    if mode == "ceil":
        return -floor_affine(-form, "floor")
    if mode != "floor":
        raise ValueError("mode must be 'floor' or 'ceil'")
    dim = form.dim
    den = 1
    for c in form.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in form.coeffs]
    lat = congruence_lattice(ints, den)
    base = form.to_poly()
    table = {}
    for r in lat.cosets():
        v = form.eval(r)
        shift = floor(v) - v
        table[r] = base + shift
    return QuasiPolynomial(dim, lat, table)


def compose_poly_qp(p: Poly, g: QuasiPolynomial, slot: int | None = None,
                    context: Lattice | int | None = None,
                    check_integer: bool = True) -> QuasiPolynomial:
    """h(x) = p(x, g(x)): variable ``slot`` of p (default last) receives the value of g.

    The remaining variables of p are identified, in order, with g's coordinates.
    """
    t = g.dim
    if p.nvars != t + 1:
        raise ValueError("p must have one more variable than g's dimension")
    if slot is None:
        slot = t
    if check_integer and not g.is_integer_valued():
        raise ValueError("inner quasi-polynomial is not integer-valued")
    lat = g.lattice
    if context is not None:
        lat = lat.intersect(context if isinstance(context, Lattice) else Lattice.box(t, context))
    xs = [Poly.var(t, i) for i in range(t)]
    zero = Poly.zero(t)
    table = {}
    for r in lat.cosets():
        inner = g.table.get(g.lattice.reduce(r), zero)
        images = xs[:slot] + [inner] + xs[slot:]
        h = p.substitute(images)
        if h.terms:
            table[r] = h
    return QuasiPolynomial(t, lat, table)


def qp_pullback(q: QuasiPolynomial, matrix: Sequence[Sequence[int]], src_dim: int,
                offset: Sequence[int] | None = None) -> QuasiPolynomial:
    """x -> q(matrix @ x + offset) for an integer matrix of shape q.dim x src_dim."""
    if offset is None:
        offset = [0] * q.dim
    lat = q.lattice.preimage(matrix, src_dim)
    images = [Poly(src_dim, {tuple(int(j == k) for k in range(src_dim)): matrix[i][j]
                             for j in range(src_dim) if matrix[i][j]}) + offset[i]
              for i in range(q.dim)]
    table = {}
    for r in lat.cosets():
        y = [sum(matrix[i][j] * r[j] for j in range(src_dim)) + offset[i] for i in range(q.dim)]
        p = q.table.get(q.lattice.reduce(y))
        if p is not None:
            h = p.substitute(images)
            if h.terms:
                table[r] = h
    return QuasiPolynomial(src_dim, lat, table)


def _fix_last(p: Poly, s: Fraction) -> Poly:
    """Set the last variable of p to the constant s (dropping that variable)."""
    out: dict[tuple[int, ...], Fraction] = {}
    powers = [Q(1)]
    for e, c in p.terms.items():
        k = e[-1]
        while len(powers) <= k:
            powers.append(powers[-1] * s)
        v = c * powers[k] if k else c
        if v:
            key = e[:-1]
            out[key] = out.get(key, 0) + v
    return Poly._raw(p.nvars - 1, {e: c for e, c in out.items() if c})


def line_partial_sum(p: QuasiPolynomial, a: Sequence[int], upper: AffineForm) -> QuasiPolynomial:
    """x -> sum_{l=0..floor(upper(x))} p(x - l*a), valid wherever upper(x) >= -1.

    Residue-class decomposition: with d the order of a modulo p's lattice,
    write l = j + m*d; along each class j the dispatch of p is fixed, the
    inner sum over m is a polynomial in its upper limit, and that limit is
    floor((upper - j)/d), itself a quasi-polynomial.
    """
    t = p.dim
    if not p.table:
        return QuasiPolynomial.zero(t)
    a = [int(v) for v in a]
    d = p.lattice.order_of(a)
    forms = [upper.shift(-j).scale(Fraction(1, d)) for j in range(d)]
    den = 1
    for c in forms[0].coeffs:
        den = lcm(den, c.denominator)
    # every limit form has the same linear part, hence the same congruence lattice
    lim_lat = congruence_lattice([int(c * den) for c in forms[0].coeffs], den)
    lat = p.lattice.intersect(lim_lat)
    # P_{c,j}(x, s) = sum_{m'=0..M} p_c(x - (j + m'd) a) with M = form_j(x) + s
    xs1 = [Poly.var(t + 1, i) for i in range(t)]
    s_var = Poly.var(t + 1, t)
    composed = {}
    for c, pc in p.table.items():
        for j in range(d):
            images = [Poly._raw(t + 1, {tuple(int(k == i) for k in range(t + 1)): Q(1)}) +
                      Poly._raw(t + 1, {tuple(int(k == t) for k in range(t + 1)): Q(-d * a[i])}
                                if a[i] else {}) + (-j * a[i])
                      for i in range(t)]
            images.append(s_var)
            inner = poly_sum_over_index(pc.extend(t + 1).substitute(images), t)
            limit = forms[j].to_poly(t + 1) + s_var
            composed[c, j] = inner.substitute(xs1 + [limit])
    memo = {}
    table = {}
    for r in lat.cosets():
        key = []
        for j in range(d):
            c = p.lattice.reduce([ri - j * ai for ri, ai in zip(r, a)])
            if (c, j) in composed:
                v = forms[j].eval(r)
                key.append((c, j, floor(v) - v))
        key = tuple(key)
        total = memo.get(key)
        if total is None:
            total = Poly.zero(t)
            for c, j, sh in key:
                total = total + _fix_last(composed[c, j], sh)
            memo[key] = total
        if total.terms:
            table[r] = total
    return QuasiPolynomial(t, lat, table)
