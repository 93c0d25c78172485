"""JSON encoding of fields, matrices, tuples and pairs."""

from __future__ import annotations

import json
from typing import Any

from .errors import FieldError, SizeMismatch
from .fields import Field, field_from_json
from .matrix import Matrix
from .tuples import MatrixTuple


class MalformedInput(ValueError):
    """Input that does not parse as the expected object."""


def matrix_to_json(M: Matrix) -> dict:
    F = M.field
    return {"field": F.spec_json(), "rows": M.nrows, "cols": M.ncols,
            "entries": [[F.to_json(x) for x in row] for row in M.rows]}


def matrix_from_json(obj: Any, field: Field | None = None) -> Matrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MalformedInput("matrix objects need an 'entries' field")
    F = _field(obj, field)
    entries = obj["entries"]
    nr = obj.get("rows", len(entries))
    nc = obj.get("cols", len(entries[0]) if entries else 0)
    if len(entries) != nr or any(len(r) != nc for r in entries):
        raise MalformedInput(f"entries do not form a {nr} x {nc} array")
    try:
        rows = [[F.from_json(x) for x in r] for r in entries]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad entry: {exc}") from exc
    return Matrix._raw(F, rows, nr, nc)


def _field(obj: dict, field: Field | None) -> Field:
    if "field" not in obj:
        if field is None:
            raise MalformedInput("missing field specification")
        return field
    F = field_from_json(obj["field"])
    if field is not None and F != field:
        raise FieldError(f"input over {F!r} but {field!r} was requested")
    return F


def tuple_to_json(T: MatrixTuple) -> dict:
    return {"members": [matrix_to_json(M) for M in T.members]}


def tuple_from_json(obj: Any, field: Field | None = None) -> MatrixTuple:
    if isinstance(obj, dict) and "members" in obj:
        members = obj["members"]
    elif isinstance(obj, dict) and "A" in obj and "B" in obj:
        members = [obj["A"], obj["B"]]
    elif isinstance(obj, dict) and "entries" in obj:
        members = [obj]
    else:
        raise MalformedInput("expected {'members': [...]}, {'A': .., 'B': ..} or a single matrix")
    if not members:
        raise MalformedInput("empty tuple")
    mats = [matrix_from_json(m, field) for m in members]
    try:
        return MatrixTuple(tuple(mats))
    except SizeMismatch as exc:
        raise MalformedInput(str(exc)) from exc


def dumps(obj: Any) -> str:
    """Byte-stable rendering: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
