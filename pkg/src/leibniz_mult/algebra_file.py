"""JSON structure-constant files.

    {
      "field": "Q",                 # or {"GF": 5}
      "dim": 2,
      "labels": ["e1", "e2"],       # optional
      "products": [{"left": 1, "right": 1, "value": ["0", "1"]}]
    }

Indices are 1-based so they match the e1..en labels.  Rationals are written
as "p/q" strings and GF(p) entries as integers in range(p).  Omitted products
are zero.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .exactlin import GF, QQ, FieldSpec
from .leibniz_core import LeibnizAlgebra

__all__ = ["AlgebraFileError", "parse_field", "field_descriptor", "loads", "load", "to_dict", "dumps", "dump", "digest"]


class AlgebraFileError(ValueError):
    pass


def parse_field(desc) -> FieldSpec:
    if desc in ("Q", "QQ"):
        return QQ
    if isinstance(desc, dict) and set(desc) == {"GF"}:
        p = desc["GF"]
    elif isinstance(desc, str) and desc.upper().startswith("GF"):
        p = desc[2:].strip("()")
    else:
        raise AlgebraFileError(f"unknown field descriptor {desc!r}")
    try:
        return GF(int(p))
    except (TypeError, ValueError) as e:
        raise AlgebraFileError(str(e)) from None


def field_descriptor(F: FieldSpec):
    return "Q" if F.p is None else {"GF": F.p}


def _scalar(F: FieldSpec, x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise AlgebraFileError(f"bad coefficient {x!r}")
    try:
        if F.p is not None and isinstance(x, str):
            x = Fraction(x)
        return F(x)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise AlgebraFileError(f"bad coefficient {x!r}: {e}") from None


def from_dict(doc: dict, name: str | None = None) -> LeibnizAlgebra:
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object")
    for key in ("field", "dim"):
        if key not in doc:
            raise AlgebraFileError(f"missing {key!r}")
    F = parse_field(doc["field"])
    n = doc["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise AlgebraFileError("dim must be a non-negative integer")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise AlgebraFileError("labels must list one name per basis vector")
    prods = {}
    for entry in doc.get("products", []):
        try:
            i, j, value = entry["left"], entry["right"], entry["value"]
        except (KeyError, TypeError):
            raise AlgebraFileError(f"product entry needs left/right/value: {entry!r}") from None
        for idx in (i, j):
            if isinstance(idx, bool) or not isinstance(idx, int) or not 1 <= idx <= n:
                raise AlgebraFileError(f"index {idx!r} out of range 1..{n}")
        if not isinstance(value, list) or len(value) != n:
            raise AlgebraFileError(f"value for e{i}e{j} must have length {n}")
        if (i - 1, j - 1) in prods:
            raise AlgebraFileError(f"duplicate product e{i}e{j}")
        prods[(i - 1, j - 1)] = [_scalar(F, x) for x in value]
    return LeibnizAlgebra.from_products(F, n, prods, name=doc.get("name", name))


def loads(text: str, name: str | None = None) -> LeibnizAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFileError(f"invalid JSON: {e}") from None
    return from_dict(doc, name)


def load(path) -> LeibnizAlgebra:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise AlgebraFileError(str(e)) from None
    return loads(text, name=path.stem)


def to_dict(L: LeibnizAlgebra, labels=None) -> dict:
    F = L.field
    doc = {"field": field_descriptor(F), "dim": L.dim}
    if L.name:
        doc["name"] = L.name
    if labels is not None:
        doc["labels"] = list(labels)
    doc["products"] = [
        {"left": i + 1, "right": j + 1, "value": [F.format(a) for a in L.table[i][j]]}
        for i in range(L.dim) for j in range(L.dim) if any(L.table[i][j])
    ]
    return doc


def dumps(L: LeibnizAlgebra, labels=None) -> str:
    return json.dumps(to_dict(L, labels), indent=2) + "\n"


def dump(L: LeibnizAlgebra, path, labels=None):
    Path(path).write_text(dumps(L, labels))


def digest(L: LeibnizAlgebra) -> str:
    """sha256 of the canonical serialization, name excluded."""
    doc = to_dict(L)
    doc.pop("name", None)
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]
