"""JSON point-set files with exact rational coordinates, and atomic writes."""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .discrepancy import WeightedPointSet
from .exceptions import DimensionMismatch, InvalidSpec
from .geometry import PointSequence, to_scalar


def encode_scalar(x: Fraction):
    """Integers stay JSON integers; everything else becomes "p/q"."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def decode_scalar(v) -> Fraction:
    if isinstance(v, bool):
        raise InvalidSpec("booleans are not coordinates")
    if isinstance(v, float):
        raise InvalidSpec("write coordinates as integers or \"p/q\" strings, not decimals")
    try:
        return to_scalar(v)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidSpec(f"bad coordinate {v!r}: {exc}") from None


def pointset_to_dict(P, weights=None) -> dict:
    if isinstance(P, WeightedPointSet):
        return {"dim": P.dim,
                "points": [[encode_scalar(c) for c in p] for p in P.points],
                "multiplicities": list(P.weights)}
    out = {"dim": P.dim, "points": [[encode_scalar(c) for c in p] for p in P]}
    if weights is not None:
        out["multiplicities"] = [int(w) for w in weights]
    return out


def pointset_from_dict(obj: dict):
    """A :class:`PointSequence`, or a :class:`WeightedPointSet` when
    multiplicities are present."""
    if not isinstance(obj, dict) or "dim" not in obj or "points" not in obj:
        raise InvalidSpec("a point-set file needs 'dim' and 'points'")
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InvalidSpec("dim must be a positive integer")
    pts = []
    for row in obj["points"]:
        if len(row) != dim:
            raise DimensionMismatch(f"point {row} does not have {dim} coordinates")
        pts.append(tuple(decode_scalar(v) for v in row))
    mult = obj.get("multiplicities")
    if mult is None:
        return PointSequence(dim, tuple(pts))
    if len(mult) != len(pts) or any(not isinstance(w, int) or w < 1 for w in mult):
        raise InvalidSpec("multiplicities must be positive integers, one per point")
    return WeightedPointSet(dim, tuple(zip(pts, mult)))


def dumps_pointset(P, weights=None) -> str:
    return json.dumps(pointset_to_dict(P, weights), indent=None) + "\n"


def loads_pointset(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"not valid JSON: {exc}") from None
    return pointset_from_dict(obj)


def read_pointset(path):
    return loads_pointset(Path(path).read_text())


def write_text_atomic(path, text: str):
    """Write via a temporary file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_pointset(path, P, weights=None):
    write_text_atomic(path, dumps_pointset(P, weights))


def write_json(path, obj):
    write_text_atomic(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
