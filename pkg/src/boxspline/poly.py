"""Sparse multivariate polynomials and affine forms over the rationals."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

try:  # exact rationals implemented in C; Fraction-compatible hashing and comparison
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

Rational = Fraction


def as_rational(v):
    """Internal exact rational for v (ints, Fractions and strings like "3/4")."""
    if type(v) is Q:
        return v
    if isinstance(v, float):
        raise TypeError("floating-point values are not accepted")
    if isinstance(v, Fraction):
        return Q(v.numerator, v.denominator)
    if isinstance(v, str):
        f = Fraction(v)
        return Q(f.numerator, f.denominator)
    return Q(v)


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(int(v.numerator), int(v.denominator))


class Poly:
    """Polynomial in ``nvars`` variables with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  Instances are
    treated as immutable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not match {nvars} variables")
                if c:
                    clean[tuple(e)] = as_rational(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        c = as_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Q(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Q(0))

    def degree(self, i: int | None = None) -> int:
        if not self.terms:
            return -1
        if i is None:
            return max(sum(e) for e in self.terms)
        return max(e[i] for e in self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, Q)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rational(other)
            if not c:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = Q(0)
        for e, c in self.terms.items():
            v = c
            for xi, k in zip(point, e):
                if k:
                    v *= xi ** k
            total += v
        return total

    def coefficients_in(self, i: int) -> list["Poly"]:
        """Write self as sum_j a_j * x_i**j; returns [a_0, a_1, ...] (x_i absent from a_j)."""
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            j = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            buckets.setdefault(j, {})[rest] = c
        if not buckets:
            return []
        return [Poly._raw(self.nvars, buckets.get(j, {})) for j in range(max(buckets) + 1)]

    def extend(self, nvars: int) -> "Poly":
        """Append trailing variables that do not occur."""
        pad = (0,) * (nvars - self.nvars)
        return Poly._raw(nvars, {e + pad: c for e, c in self.terms.items()})

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: variable i is replaced by ``images[i]`` (all over a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable is required")
        if not images:
            return self
        n = images[0].nvars
        if not self.terms:
            return Poly.zero(n)
        powers = [[Poly.constant(n, 1)] for _ in images]
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = powers[i]
                while len(cache) <= k:
                    cache.append(cache[-1] * images[i])
                term = cache[k] if term is None else term * cache[k]
            if term is None:
                key = (0,) * n
                out[key] = out.get(key, 0) + c
                continue
            for te, tc in term.terms.items():
                out[te] = out.get(te, 0) + c * tc
        return Poly._raw(n, {e: c for e, c in out.items() if c})

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-v for v in kv[0])))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self.to_str()})"


class AffineForm:
    """x -> coeffs . x + const with rational data."""

    __slots__ = ("coeffs", "const", "_hash")

    def __init__(self, coeffs: Iterable, const=0):
        self.coeffs = tuple(as_rational(c) for c in coeffs)
        self.const = as_rational(const)
        self._hash = None

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, AffineForm) and self.coeffs == other.coeffs
                and self.const == other.const)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coeffs, self.const))
        return self._hash

    def __repr__(self):
        return f"AffineForm({self.to_str()})"

    def __call__(self, point: Sequence) -> Fraction:
        return self.eval(point)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != len(self.coeffs):
            raise ValueError("dimension mismatch")
        return sum((c * x for c, x in zip(self.coeffs, point) if c), self.const)

    def __add__(self, other: "AffineForm"):
        return AffineForm([a + b for a, b in zip(self.coeffs, other.coeffs)], self.const + other.const)

    def __sub__(self, other: "AffineForm"):
        return AffineForm([a - b for a, b in zip(self.coeffs, other.coeffs)], self.const - other.const)

    def __neg__(self):
        return AffineForm([-a for a in self.coeffs], -self.const)

    def scale(self, k) -> "AffineForm":
        k = as_rational(k)
        return AffineForm([a * k for a in self.coeffs], self.const * k)

    def shift(self, k) -> "AffineForm":
        return AffineForm(self.coeffs, self.const + as_rational(k))

    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def denominator(self) -> int:
        """lcm of all denominators: the value at an integer point has this denominator at most."""
        d = self.const.denominator
        for c in self.coeffs:
            d = lcm(d, c.denominator)
        return d

    def to_poly(self, nvars: int | None = None) -> Poly:
        n = self.dim if nvars is None else nvars
        terms = {}
        for i, c in enumerate(self.coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        if self.const:
            terms[(0,) * n] = self.const
        return Poly._raw(n, terms)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return self.to_poly().to_str(names)


def poly_eval(p: Poly, x: Sequence) -> Fraction:
    return to_fraction(p.eval([as_rational(v) for v in x]))


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    # B_1 = -1/2 convention
    if n == 0:
        return Fraction(1)
    return -sum((comb(n + 1, k) * _bernoulli(k) for k in range(n)), Fraction(0)) / (n + 1)


@lru_cache(maxsize=None)
def faulhaber(j: int) -> Poly:
    """The polynomial p_j with p_j(x) = sum_{l=0..x} l**j for x >= 0 and p_j(-1) = 0."""
    if j < 0:
        raise ValueError("j must be non-negative")
    # sum_{k=0}^{n-1} k^j = 1/(j+1) sum_i C(j+1, i) B_i n^(j+1-i), then n = x + 1
    n_coeffs = [Fraction(0)] * (j + 2)
    for i in range(j + 1):
        n_coeffs[j + 1 - i] += Fraction(comb(j + 1, i)) * _bernoulli(i) / (j + 1)
    out = [Fraction(0)] * (j + 2)
    for k, c in enumerate(n_coeffs):
        if not c:
            continue
        for m in range(k + 1):
            out[m] += c * comb(k, m)
    return Poly(1, {(m,): c for m, c in enumerate(out) if c})


def poly_sum_over_index(q: Poly, index: int) -> Poly:
    """Replace variable ``index`` (the summation index) by an upper limit.

    Returns p with p(..., N, ...) = sum_{l=0..N} q(..., l, ...) for N >= 0 and
    p(..., -1, ...) = 0.
    """
    if not 0 <= index < q.nvars:
        raise ValueError(f"summation variable {index} not among {q.nvars} variables")
    out: dict[tuple[int, ...], Fraction] = {}
    for e, c in q.terms.items():
        f = faulhaber(e[index])
        for (k,), fc in f.terms.items():
            ne = e[:index] + (k,) + e[index + 1:]
            out[ne] = out.get(ne, 0) + c * fc
    return Poly._raw(q.nvars, {e: c for e, c in out.items() if c})


def poly_affine_substitute(p: Poly, subst: Sequence[AffineForm]) -> Poly:
    """Compose p with affine images of its variables (all over one new variable set)."""
    if len(subst) != p.nvars:
        raise ValueError("every variable needs an image")
    if not subst:
        return p
    n = subst[0].dim
    return p.substitute([f.to_poly(n) for f in subst])
