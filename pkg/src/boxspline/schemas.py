"""JSON Schemas for every file the package reads or writes.

Rationals are strings ``"p/q"`` (``"0/1"`` for zero).  Integers are plain JSON
integers of any size.  ``python -m boxspline show --schema NAME`` prints one
of these.
"""
from __future__ import annotations

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"}
INT_VECTOR = {"type": "array", "items": {"type": "integer"}}
INT_MATRIX = {"type": "array", "items": INT_VECTOR}
NONNEG = {"type": "integer", "minimum": 0}
LATTICE_TAG = {"enum": ["N", "Z"]}

POLY = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["exponents", "coeff"],
        "additionalProperties": False,
        "properties": {"exponents": {"type": "array", "items": NONNEG}, "coeff": RATIONAL},
    },
}

QUASIPOLY = {
    "type": "object",
    "required": ["dim", "period", "table"],
    "additionalProperties": False,
    "properties": {
        "dim": NONNEG,
        "period": {"type": "integer", "minimum": 1},
        # present only when the dispatch lattice is not period * Z^dim; rows in Hermite normal form
        "lattice": INT_MATRIX,
        "table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["residues", "poly"],
                "additionalProperties": False,
                "properties": {"residues": INT_VECTOR, "poly": POLY},
            },
        },
    },
}

ARRANGEMENT = {
    "type": "object",
    "required": ["dim", "domain", "planes"],
    "additionalProperties": False,
    "properties": {
        "dim": NONNEG,
        "domain": LATTICE_TAG,
        "planes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["normal", "constant"],
                "additionalProperties": False,
                "properties": {"normal": INT_VECTOR, "constant": {"type": "integer"}},
            },
        },
    },
}

SYSTEM = {
    "type": "object",
    "required": ["matrix"],
    "additionalProperties": False,
    "properties": {
        "rows": {"type": "integer", "minimum": 1},
        "cols": NONNEG,
        "matrix": INT_MATRIX,
        "offsets": INT_VECTOR,
        "relations": {"type": "array", "items": {"enum": ["eq", "le"]}},
    },
}

SEMISIMPLE = {
    "type": "object",
    "required": ["dim", "lattice", "pieces"],
    "additionalProperties": False,
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "lattice": LATTICE_TAG,
        "pieces": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["offset"],
                "additionalProperties": False,
                "properties": {"offset": INT_VECTOR, "generators": INT_MATRIX},
            },
        },
    },
}

GROWTH = {
    "type": "object",
    "required": ["set"],
    "additionalProperties": False,
    "properties": {
        "set": SEMISIMPLE,
        "spec": {
            "type": "object",
            "required": ["t1", "t2"],
            "additionalProperties": False,
            "properties": {"t1": NONNEG, "t2": NONNEG},
        },
    },
}

DM = {
    "type": "object",
    "required": ["matrix"],
    "additionalProperties": False,
    "properties": {"t": {"type": "integer", "minimum": 1}, "n": {"type": "integer", "minimum": 1},
                   "matrix": INT_MATRIX},
}

PROBLEM = {
    "type": "object",
    "required": ["kind", "payload"],
    "additionalProperties": False,
    "properties": {"kind": {"enum": ["diophantine", "growth", "dm"]}, "payload": {"type": "object"}},
    "allOf": [
        {"if": {"properties": {"kind": {"const": "diophantine"}}}, "then": {"properties": {"payload": SYSTEM}}},
        {"if": {"properties": {"kind": {"const": "growth"}}}, "then": {"properties": {"payload": GROWTH}}},
        {"if": {"properties": {"kind": {"const": "dm"}}}, "then": {"properties": {"payload": DM}}},
    ],
}

BOXSPLINE = {
    "type": "object",
    "required": ["arrangement", "pieces"],
    "additionalProperties": False,
    "properties": {
        "arrangement": ARRANGEMENT,
        "pieces": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["signs", "quasipoly"],
                "additionalProperties": False,
                "properties": {"signs": {"type": "string", "pattern": "^[-+0]*$"}, "quasipoly": QUASIPOLY},
            },
        },
        # the problem the spline solves, so that `verify` can replay it against the oracle
        "problem": PROBLEM,
    },
}

DIFF_REPORT = {
    "type": "object",
    "required": ["instance", "bound", "checked_points", "mismatches"],
    "additionalProperties": False,
    "properties": {
        "instance": {"type": "string"},
        "bound": NONNEG,
        "checked_points": NONNEG,
        "mismatches": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "symbolic", "oracle"],
                "properties": {"point": INT_VECTOR, "symbolic": RATIONAL, "oracle": RATIONAL},
            },
        },
    },
}

ALL = {
    "poly": POLY,
    "quasipoly": QUASIPOLY,
    "arrangement": ARRANGEMENT,
    "boxspline": BOXSPLINE,
    "system": SYSTEM,
    "semisimple": SEMISIMPLE,
    "growth": GROWTH,
    "dm": DM,
    "problem": PROBLEM,
    "diffreport": DIFF_REPORT,
}
