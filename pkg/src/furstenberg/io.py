"""JSON ingestion and report emission."""

from __future__ import annotations

import json
import sys
from typing import IO, Any, Mapping, Optional

from .errors import UsageError
from .field import parse_field
from .zerodim import PointSet


def points_from_json(data: Mapping[str, Any]) -> PointSet:
    if not isinstance(data, Mapping):
        raise UsageError("point file must hold a JSON object")
    for key in ("field", "n", "points"):
        if key not in data:
            raise UsageError(f"point file is missing {key!r}")
    F = parse_field(str(data["field"]))
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise UsageError("'n' must be a positive integer")
    pts = data["points"]
    if not isinstance(pts, list):
        raise UsageError("'points' must be a list")
    for idx, p in enumerate(pts):
        if not isinstance(p, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in p):
            raise UsageError(f"point {idx} must be a list of integer codes")
    return PointSet(F, n, pts)


def points_to_json(S: PointSet) -> dict:
    return {"field": S.field.name, "n": S.n, "points": [list(p) for p in S.points]}


def ingest_points(path: str) -> PointSet:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}")
    return points_from_json(data)


def dumps_report(report: Mapping[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_default)


def emit_report(report: Mapping[str, Any], stream: Optional[IO[str]] = None) -> None:
    stream = stream or sys.stdout
    stream.write(dumps_report(report) + "\n")


def _default(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (set, frozenset, tuple)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
    if isinstance(obj, float) and obj != obj:
        return None
    return str(obj)
