"""Canonical JSON emission for experiment reports.

Keys are sorted, rationals appear as "num/den" strings, BigFloats as
decimal strings at their declared precision; a sha256 digest covers the
whole report except the wall-time field, so reruns with identical
inputs and seeds are byte-identical modulo that one field.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

import mpmath

from .bigfloat import BigFloat
from .intpoly import IntPoly, RootInterval

SCHEMA = "degreelab/v1"
DIGEST_EXCLUDED = ("wall_time_s", "digest")


def jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, BigFloat):
        return obj.str_digits(min(obj.decimal_digits, 40))
    if isinstance(obj, mpmath.mpf):
        return mpmath.nstr(obj, 20)
    if isinstance(obj, IntPoly):
        return obj.pretty()
    if isinstance(obj, RootInterval):
        return {"lower": jsonable(obj.lower), "upper": jsonable(obj.upper),
                "polynomial": obj.polynomial.pretty()}
    if is_dataclass(obj) and not isinstance(obj, type):
        return jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "coords"):
        return jsonable(tuple(obj.coords))
    return str(obj)


def tagged(value, provenance):
    """Attach a provenance tag: exact | certified-interval | heuristic-estimate."""
    return {"value": jsonable(value), "provenance": provenance}


def canonical_dumps(payload):
    return json.dumps(jsonable(payload), sort_keys=True, indent=1)


def finalize_report(report):
    """Fill in the digest over the digest-stable fields."""
    body = {k: v for k, v in jsonable(report).items() if k not in DIGEST_EXCLUDED}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    report = dict(report)
    report["digest"] = hashlib.sha256(blob.encode()).hexdigest()
    return report


def write_tsv(path, header_cols, rows):
    """Two-column (or more) tab-separated plot data with a # header."""
    lines = ["# " + "\t".join(header_cols)]
    for row in rows:
        lines.append("\t".join(str(x) for x in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
