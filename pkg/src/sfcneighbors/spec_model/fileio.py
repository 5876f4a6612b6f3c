"""JSON spec documents with exact rationals written as strings."""

from __future__ import annotations

import json
import re
from fractions import Fraction

from ..errors import SpecParseError, SpecValidationError
from ..geometry import PointMatrix
from .model import BSpecification, BStateSystem, validate_spec

REQUIRED = (
    "dimension",
    "branching",
    "state_count",
    "root_state",
    "child_state",
    "vertex_counts",
    "root_points",
    "matrices",
)

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SpecParseError(f"{where}: floating point values are not allowed, use 'p/q' strings")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise SpecParseError(f"{where}: zero denominator") from None
    raise SpecParseError(f"{where}: {value!r} is not a rational of the form 'p/q'")


def _parse_matrix(rows, where: str) -> tuple:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SpecParseError(f"{where}: expected a list of rows")
    return tuple(
        tuple(_parse_rational(x, f"{where}[{i}][{k}]") for k, x in enumerate(row))
        for i, row in enumerate(rows)
    )


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecParseError(f"{where}: expected an integer")
    return value


def save_spec(spec: BSpecification) -> str:
    """Serialize a specification to a JSON document (deterministic)."""
    doc = {
        "name": spec.name,
        "dimension": spec.dim,
        "branching": spec.branching,
        "state_count": spec.state_count,
        "root_state": spec.root_state,
        "state_names": list(spec.state_names) if spec.state_names else None,
        "child_state": [list(r) for r in spec.child_state],
        "vertex_counts": list(spec.vertex_counts),
        "root_points": [[_fmt(x) for x in row] for row in spec.root_points.rows],
        "matrices": {
            f"{s},{j}": [[_fmt(x) for x in row] for row in spec.matrix(s, j)]
            for s in range(spec.state_count)
            for j in range(spec.branching)
        },
    }
    if doc["state_names"] is None:
        del doc["state_names"]
    return json.dumps(doc, indent=1) + "\n"


def load_spec(text: str) -> BSpecification:
    """Parse and validate a JSON spec document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SpecParseError("top level must be an object")
    for key in REQUIRED:
        if key not in doc:
            raise SpecParseError(f"missing field '{key}'")
    d = _int(doc["dimension"], "dimension")
    b = _int(doc["branching"], "branching")
    n = _int(doc["state_count"], "state_count")
    root = _int(doc["root_state"], "root_state")
    table = doc["child_state"]
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise SpecParseError("child_state: expected a state_count x branching integer table")
    child_state = tuple(
        tuple(_int(x, f"child_state[{s}][{j}]") for j, x in enumerate(row))
        for s, row in enumerate(table)
    )
    counts = doc["vertex_counts"]
    if not isinstance(counts, list):
        raise SpecParseError("vertex_counts: expected a list")
    vertex_counts = tuple(_int(x, f"vertex_counts[{i}]") for i, x in enumerate(counts))
    root_rows = _parse_matrix(doc["root_points"], "root_points")
    if not root_rows or any(len(r) != len(root_rows[0]) for r in root_rows) or not root_rows[0]:
        raise SpecParseError("root_points: expected a non-empty rectangular d x n array")
    raw = doc["matrices"]
    if not isinstance(raw, dict):
        raise SpecParseError("matrices: expected a map from 's,j' to matrices")
    matrices = []
    for s in range(n):
        row = []
        for j in range(b):
            key = f"{s},{j}"
            if key not in raw:
                raise SpecParseError(f"matrices: missing entry '{key}'")
            row.append(_parse_matrix(raw[key], f"matrices['{key}']"))
        matrices.append(tuple(row))
    names = doc.get("state_names")
    spec = BSpecification(
        system=BStateSystem(n, child_state, b, root),
        dim=d,
        vertex_counts=vertex_counts,
        root_points=PointMatrix.from_rows(root_rows),
        matrices=tuple(matrices),
        state_names=tuple(names) if names else None,
        name=str(doc.get("name", "")),
    )
    report = validate_spec(spec)
    if not report.ok:
        raise SpecValidationError(f"invalid specification:\n{report}", report)
    return spec
