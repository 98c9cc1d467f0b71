"""JSON documents for fixed point data and DOT export of multigraphs."""

from __future__ import annotations

import json

from .errors import InvalidDataError
from .fpdata import FixedPoint, FixedPointData, Multigraph


def to_document(data: FixedPointData) -> dict:
    return {
        "dim": data.dim,
        "points": [{"sign": p.sign, "weights": list(p.weights)} for p in data.points],
    }


def _int(value, what: str) -> int:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidDataError(f"{what} must be an integer, got {value!r}")
    return value


def from_document(doc) -> FixedPointData:
    if not isinstance(doc, dict):
        raise InvalidDataError("document must be a JSON object")
    if "dim" not in doc or "points" not in doc:
        raise InvalidDataError("document needs 'dim' and 'points'")
    dim = _int(doc["dim"], "dim")
    if dim <= 0 or dim % 2:
        raise InvalidDataError(f"dim must be an even positive integer, got {dim}")
    raw_points = doc["points"]
    if not isinstance(raw_points, list) or not raw_points:
        raise InvalidDataError("'points' must be a non-empty list")
    points = []
    for i, rp in enumerate(raw_points, 1):
        if not isinstance(rp, dict) or "sign" not in rp or "weights" not in rp:
            raise InvalidDataError(f"point {i} needs 'sign' and 'weights'")
        sign = _int(rp["sign"], f"point {i} sign")
        if sign not in (1, -1):
            raise InvalidDataError(f"point {i}: sign must be 1 or -1")
        if not isinstance(rp["weights"], list):
            raise InvalidDataError(f"point {i}: weights must be a list")
        weights = [_int(w, f"point {i} weight") for w in rp["weights"]]
        if 2 * len(weights) != dim:
            raise InvalidDataError(
                f"point {i}: {len(weights)} weights do not match dim {dim}"
            )
        points.append(FixedPoint(sign, weights))
    return FixedPointData(dim // 2, points)


def dumps(data: FixedPointData) -> str:
    return json.dumps(to_document(data), indent=2) + "\n"


def loads(text: str) -> FixedPointData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDataError(f"malformed JSON: {exc}") from exc
    return from_document(doc)


def to_dot(graph: Multigraph, name: str = "fixed_points") -> str:
    lines = [f"graph {name} {{"]
    for vid, sign in graph.vertices:
        s = "+" if sign > 0 else "-"
        lines.append(f'  p{vid} [label="p{vid} ({s})", sign="{s}1"];')
    for e in graph.edges:
        lines.append(f'  p{e.u} -- p{e.v} [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
