"""Canonical JSON for polynomials, quasi-polynomials, arrangements, box splines and problems.

Output is deterministic: keys are sorted, lists are in a fixed canonical
order, and rationals are written as ``"p/q"``.  Reading a file and writing it
back therefore reproduces it byte for byte.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from . import schemas
from .arrangement import Arrangement, Hyperplane
from .diophantine import DioSystem, PreconditionError
from .lattice import Lattice
from .partition import DMInstance
from .poly import Poly, to_fraction
from .problem import DIOPHANTINE, DM, GROWTH, GrowthProblem, Problem
from .quasipoly import QuasiPolynomial
from .semilinear import GrowthSpec, SemiSimpleSet, SimpleSet
from .spline import BoxSpline


class SchemaError(ValueError):
    """The input is not valid JSON for the expected object."""


# -- rationals ------------------------------------------------------------------------

_RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def rational_to_str(v) -> str:
    f = to_fraction(v) if not isinstance(v, int) else Fraction(v)
    return f"{f.numerator}/{f.denominator}"


def rational_from_str(s: str) -> Fraction:
    m = _RATIONAL.match(s) if isinstance(s, str) else None
    if m is None:
        raise SchemaError(f"not a rational string: {s!r}")
    den = int(m.group(2) or 1)
    if den == 0:
        raise SchemaError(f"zero denominator in {s!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(v) -> str:
    """Human form: ``"3"`` for integers, ``"-3/2"`` otherwise."""
    f = to_fraction(v) if not isinstance(v, int) else Fraction(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# -- validation and text I/O ------------------------------------------------------------

def validate(data: Any, schema_name: str):
    try:
        jsonschema.validate(data, schemas.ALL[schema_name])
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(f"{schema_name} JSON invalid at {where}: {e.message}") from None


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"malformed JSON: {e}") from None


def read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    return loads(text)


# -- polynomials ------------------------------------------------------------------------------

def poly_to_json(p: Poly) -> list:
    return [{"exponents": list(e), "coeff": rational_to_str(c)} for e, c in sorted(p.terms.items())]


def poly_from_json(data: list, nvars: int) -> Poly:
    terms = {}
    for t in data:
        e = tuple(t["exponents"])
        if len(e) != nvars:
            raise SchemaError(f"exponent vector {list(e)} should have {nvars} entries")
        if e in terms:
            raise SchemaError(f"repeated exponent vector {list(e)}")
        terms[e] = rational_from_str(t["coeff"])
    return Poly(nvars, terms)


# Above this many residue classes a quasi-polynomial is written with its lattice instead.
BOX_TABLE_LIMIT = 4096


def qp_to_json(q: QuasiPolynomial) -> dict:
    """Residue table mod the period; a ``lattice`` key is added only when that table would be huge."""
    lat, d = q.lattice, q.period
    if lat.is_box() or d ** q.dim <= BOX_TABLE_LIMIT:
        table = q.to_residue_table()
        extra = {}
    else:
        table = q.table
        extra = {"lattice": [list(row) for row in lat.basis]}
    out = {
        "dim": q.dim,
        "period": d,
        "table": [{"residues": list(r), "poly": poly_to_json(p)} for r, p in sorted(table.items())],
    }
    out.update(extra)
    return out


def qp_from_json(data: dict) -> QuasiPolynomial:
    dim, period = data["dim"], data["period"]
    if "lattice" in data:
        rows = data["lattice"]
        if len(rows) != dim or any(len(r) != dim for r in rows):
            raise SchemaError("quasi-polynomial lattice must be a square integer matrix")
        try:
            lat = Lattice(rows, dim)
            full = len(lat.basis) == dim and all(lat.basis[i][i] for i in range(dim))
        except (IndexError, ZeroDivisionError, ValueError):
            full = False
        if not full:
            raise SchemaError("quasi-polynomial lattice is not of full rank")
        if lat.exponent != period:
            raise SchemaError(f"period {period} does not match the lattice (exponent {lat.exponent})")
    else:
        lat = Lattice.box(dim, period)
    table = {}
    for entry in data["table"]:
        r = tuple(entry["residues"])
        if len(r) != dim:
            raise SchemaError(f"residue vector {list(r)} should have {dim} entries")
        if "lattice" not in data and any(not 0 <= v < period for v in r):
            raise SchemaError(f"residues {list(r)} must lie in [0, {period})")
        key = lat.reduce(r)
        if key in table:
            raise SchemaError(f"residue class of {list(r)} listed twice")
        table[key] = poly_from_json(entry["poly"], dim)
    return QuasiPolynomial(dim, lat, table)


# -- arrangements and box splines ----------------------------------------------------------

def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "dim": arr.dim,
        "domain": arr.domain,
        "planes": [{"normal": list(h.normal), "constant": h.constant} for h in arr.planes],
    }


def arrangement_from_json(data: dict) -> Arrangement:
    dim = data["dim"]
    try:
        planes = [Hyperplane(tuple(p["normal"]), p["constant"]) for p in data["planes"]]
        arr = Arrangement(dim, planes, data["domain"])
    except ValueError as e:
        raise SchemaError(f"bad arrangement: {e}") from None
    if arr.planes != tuple(planes):
        raise SchemaError("arrangement planes must start with the coordinate planes, "
                          "be primitive and contain no duplicates")
    return arr


def boxspline_to_json(F: BoxSpline, problem: Problem | None = None) -> dict:
    """Every region gets a piece (zero pieces have an empty table), sorted by sign vector."""
    zero = QuasiPolynomial.zero(F.dim)
    signs = sorted({r.sign_vector for r in F.regions()} | set(F.pieces))
    out = {
        "arrangement": arrangement_to_json(F.arrangement),
        "pieces": [{"signs": sv, "quasipoly": qp_to_json(F.pieces.get(sv, zero))} for sv in signs],
    }
    if problem is not None:
        out["problem"] = problem_to_json(problem)
    return out


def boxspline_from_json(data: dict, validated: bool = False) -> BoxSpline:
    if not validated:
        validate(data, "boxspline")
    arr = arrangement_from_json(data["arrangement"])
    pieces = {}
    for entry in data["pieces"]:
        sv = entry["signs"]
        if sv in pieces:
            raise SchemaError(f"sign vector {sv} listed twice")
        q = qp_from_json(entry["quasipoly"])
        if q.dim != arr.dim:
            raise SchemaError(f"piece {sv} has dimension {q.dim}, the arrangement {arr.dim}")
        pieces[sv] = q
    try:
        return BoxSpline(arr, pieces)
    except ValueError as e:
        raise SchemaError(str(e)) from None


# -- problems -----------------------------------------------------------------------------------

def system_to_json(s: DioSystem) -> dict:
    return {"rows": s.rows, "cols": s.cols, "matrix": [list(r) for r in s.matrix],
            "offsets": list(s.offsets), "relations": list(s.relations)}


def system_from_json(data: dict) -> DioSystem:
    m = data["matrix"]
    if "rows" in data and data["rows"] != len(m):
        raise SchemaError(f"rows = {data['rows']} but the matrix has {len(m)} rows")
    s = DioSystem(tuple(tuple(r) for r in m), tuple(data.get("offsets", ())),
                  tuple(data.get("relations", ())), data.get("cols", -1))
    return s


def semisimple_to_json(X: SemiSimpleSet) -> dict:
    return {"dim": X.dim, "lattice": X.lattice,
            "pieces": [{"offset": list(s.offset), "generators": [list(g) for g in s.generators]}
                       for s in X.pieces]}


def semisimple_from_json(data: dict) -> SemiSimpleSet:
    pieces = tuple(SimpleSet(tuple(p["offset"]), tuple(tuple(g) for g in p.get("generators", ())),
                             data["lattice"]) for p in data["pieces"])
    return SemiSimpleSet(data["dim"], pieces, data["lattice"])


def dm_to_json(inst: DMInstance) -> dict:
    return {"t": inst.t, "n": inst.n, "matrix": [list(r) for r in inst.matrix]}


def dm_from_json(data: dict) -> DMInstance:
    inst = DMInstance(tuple(tuple(r) for r in data["matrix"]))
    if data.get("t", inst.t) != inst.t or data.get("n", inst.n) != inst.n:
        raise SchemaError(f"t and n must match the matrix shape {inst.t} x {inst.n}")
    return inst


def problem_to_json(p: Problem) -> dict:
    if p.kind == DIOPHANTINE:
        payload = system_to_json(p.payload)
    elif p.kind == GROWTH:
        payload = {"set": semisimple_to_json(p.payload.set),
                   "spec": {"t1": p.payload.spec.t1, "t2": p.payload.spec.t2}}
    else:
        payload = dm_to_json(p.payload)
    return {"kind": p.kind, "payload": payload}


def problem_from_json(data: dict, validated: bool = False) -> Problem:
    """Parse a problem file.  Shape errors raise SchemaError; PreconditionError passes through."""
    if not validated:
        validate(data, "problem")
    kind, payload = data["kind"], data["payload"]
    try:
        if kind == DIOPHANTINE:
            return Problem(kind, system_from_json(payload))
        if kind == GROWTH:
            X = semisimple_from_json(payload["set"])
            spec = payload.get("spec", {"t1": 0, "t2": X.dim})
            spec = GrowthSpec(spec["t1"], spec["t2"])
            if spec.dim != X.dim:
                raise SchemaError(f"t1 + t2 = {spec.dim} but the set lives in dimension {X.dim}")
            return Problem(kind, GrowthProblem(X, spec))
        return Problem(DM, dm_from_json(payload))
    except PreconditionError:
        raise
    except SchemaError:
        raise
    except ValueError as e:
        raise SchemaError(f"invalid {kind} payload: {e}") from None


def load_document(data: Any) -> tuple[str, Any]:
    """Classify a parsed JSON document as ("problem", Problem) or ("boxspline", (BoxSpline, Problem | None))."""
    if isinstance(data, dict) and "kind" in data:
        return "problem", problem_from_json(data)
    if isinstance(data, dict) and "arrangement" in data:
        validate(data, "boxspline")
        F = boxspline_from_json(data, validated=True)
        prob = problem_from_json(data["problem"], validated=True) if "problem" in data else None
        return "boxspline", (F, prob)
    raise SchemaError("expected a problem file (with 'kind') or a box spline (with 'arrangement')")
