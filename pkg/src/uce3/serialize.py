"""Reading and writing the JSON algebra format.

A document is one JSON object:

    {"name": "...", "field": "Q" | "GF(p)", "dim": n,
     "binary": [[i, j, [[k, "coeff"], ...]], ...]}

or with "ternary": [[i, j, k, [[l, "coeff"], ...]], ...] for a trilinear
bracket. Entries are sparse (absent tuples are zero), indices 0-based,
coefficients decimal integers or "a/b" strings.

Error split, mirrored by the CLI exit codes: FormatError for a document
whose shape is wrong (bad JSON, unknown keys, wrong types), SemanticError
for a well-formed document with invalid content (unknown field, index out
of range, unparsable coefficient).
"""

from __future__ import annotations

import json

from .algebra import BinaryAlgebra, TernaryAlgebra
from .errors import FormatError, SemanticError
from .fields import field_of

__all__ = [
    "algebra_from_dict",
    "algebra_to_dict",
    "loads_algebra",
    "dumps_algebra",
    "load_algebra",
]

_ALLOWED_KEYS = {"name", "field", "dim", "binary", "ternary"}


def _check_index(i, dim, what):
    if type(i) is not int:
        raise FormatError(f"{what} index must be an integer, got {i!r}")
    if not 0 <= i < dim:
        raise SemanticError(f"{what} index {i} out of range for dim {dim}")
    return i


def _read_coeff(field, x):
    if type(x) is int:
        return field.coerce(x)
    if type(x) is str:
        return field.parse_scalar(x)
    raise FormatError(f"coefficient must be an integer or string, got {x!r}")


def _read_pairs(field, dim, pairs, what):
    if not isinstance(pairs, list):
        raise FormatError(f"{what} coefficient list must be a list, got {pairs!r}")
    out = []
    for item in pairs:
        if not isinstance(item, list) or len(item) != 2:
            raise FormatError(f"{what} coefficient entry must be [index, coeff]")
        k = _check_index(item[0], dim, what)
        out.append((k, _read_coeff(field, item[1])))
    return out


def algebra_from_dict(doc):
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be a JSON object")
    unknown = set(doc) - _ALLOWED_KEYS
    if unknown:
        raise FormatError(f"unknown keys: {sorted(unknown)}")
    for key in ("field", "dim"):
        if key not in doc:
            raise FormatError(f"missing required key {key!r}")
    if ("binary" in doc) == ("ternary" in doc):
        raise FormatError("exactly one of 'binary' or 'ternary' is required")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise FormatError("'name' must be a string")
    if not isinstance(doc["field"], str):
        raise FormatError("'field' must be a string")
    field = field_of(doc["field"])
    dim = doc["dim"]
    if type(dim) is not int:
        raise FormatError("'dim' must be an integer")
    if dim < 0:
        raise SemanticError(f"dim must be non-negative, got {dim}")
    if "binary" in doc:
        rows = doc["binary"]
        if not isinstance(rows, list):
            raise FormatError("'binary' must be a list")
        entries = []
        for row in rows:
            if not isinstance(row, list) or len(row) != 3:
                raise FormatError("binary entry must be [i, j, pairs]")
            i = _check_index(row[0], dim, "bracket")
            j = _check_index(row[1], dim, "bracket")
            entries.append((i, j, _read_pairs(field, dim, row[2], "target")))
        return BinaryAlgebra.from_sparse(field, dim, entries, name=name)
    rows = doc["ternary"]
    if not isinstance(rows, list):
        raise FormatError("'ternary' must be a list")
    entries = []
    for row in rows:
        if not isinstance(row, list) or len(row) != 4:
            raise FormatError("ternary entry must be [i, j, k, pairs]")
        i = _check_index(row[0], dim, "bracket")
        j = _check_index(row[1], dim, "bracket")
        k = _check_index(row[2], dim, "bracket")
        entries.append((i, j, k, _read_pairs(field, dim, row[3], "target")))
    return TernaryAlgebra.from_sparse(field, dim, entries, name=name)


def algebra_to_dict(alg):
    f = alg.field
    doc = {"name": alg.name, "field": f.spec_str(), "dim": alg.dim}
    if isinstance(alg, BinaryAlgebra):
        rows = []
        for i in range(alg.dim):
            for j in range(alg.dim):
                pairs = [
                    [k, f.scalar_str(x)]
                    for k, x in enumerate(alg.c[i][j])
                    if not f.is_zero(x)
                ]
                if pairs:
                    rows.append([i, j, pairs])
        doc["binary"] = rows
    else:
        rows = []
        for i in range(alg.dim):
            for j in range(alg.dim):
                for k in range(alg.dim):
                    pairs = [
                        [l, f.scalar_str(x)]
                        for l, x in enumerate(alg.t[i][j][k])
                        if not f.is_zero(x)
                    ]
                    if pairs:
                        rows.append([i, j, k, pairs])
        doc["ternary"] = rows
    return doc


def loads_algebra(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
    return algebra_from_dict(doc)


def dumps_algebra(alg):
    return json.dumps(algebra_to_dict(alg), sort_keys=True, indent=1)


def load_algebra(path):
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    return loads_algebra(text)
