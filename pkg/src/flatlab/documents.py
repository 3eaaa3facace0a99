"""Self-describing JSON documents for surfaces, origamis and records.

Exact coordinates are written as integers or ``"p/q"`` strings so that a
round trip is lossless.  Floating coordinates are written as JSON numbers
with ``repr`` precision (17 significant digits).
"""

from __future__ import annotations

from fractions import Fraction
import json

from .errors import FlatlabError, ParseError, ValidationError
from .geometry import Vec
from .origami import Origami
from .surface import TranslationSurface

SURFACE_FORMAT = "flatlab-surface"
ORIGAMI_FORMAT = "flatlab-origami"


def _num_out(x):
    if isinstance(x, bool):
        raise ValidationError("boolean is not a coordinate")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    return float(x)


def _num_in(x, exact: bool):
    if isinstance(x, str):
        try:
            num, den = x.split("/")
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational literal {x!r}") from e
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"bad coordinate {x!r}")
    if exact:
        if isinstance(x, float):
            raise ParseError("float coordinate in an exact document")
        return x
    return float(x)


def surface_to_document(s: TranslationSurface) -> dict:
    return {
        "format": SURFACE_FORMAT,
        "version": 1,
        "exact": s.exact,
        "area_scale": s.area_scale,
        "marked": list(s.marked),
        "half_edges": [
            {
                "vector": [_num_out(s.vec[h].x), _num_out(s.vec[h].y)],
                "twin": s.twin[h],
                "next": s.nxt[h],
            }
            for h in range(s.n_half_edges())
        ],
    }


def surface_from_document(doc: dict) -> TranslationSurface:
    if not isinstance(doc, dict) or doc.get("format") != SURFACE_FORMAT:
        raise ParseError("not a surface document")
    try:
        exact = bool(doc["exact"])
        records = []
        for i, rec in enumerate(doc["half_edges"]):
            x = _num_in(rec["vector"][0], exact)
            y = _num_in(rec["vector"][1], exact)
            records.append((Vec(x, y), int(rec["twin"]), int(rec["next"])))
        marked = [int(m) for m in doc.get("marked", [])]
    except (KeyError, TypeError, IndexError) as e:
        raise ParseError(f"malformed surface document: {e}") from e
    try:
        s = TranslationSurface(
            [r[0] for r in records],
            [r[1] for r in records],
            [r[2] for r in records],
            exact=exact,
            area_scale=float(doc.get("area_scale", 1.0)),
            marked=marked,
        )
    except FlatlabError as e:
        if isinstance(e, ParseError):
            raise
        raise ValidationError(str(e)) from e
    return s


def origami_to_document(o: Origami) -> dict:
    return {
        "format": ORIGAMI_FORMAT,
        "version": 1,
        "n": o.n_squares,
        "h": list(o.h),
        "v": list(o.v),
    }


def origami_from_document(doc: dict) -> Origami:
    if not isinstance(doc, dict):
        raise ParseError("not an origami document")
    if "format" in doc and doc["format"] != ORIGAMI_FORMAT:
        raise ParseError("not an origami document")
    try:
        n = int(doc["n"])
        h = tuple(int(x) for x in doc["h"])
        v = tuple(int(x) for x in doc["v"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed origami document: {e}") from e
    return Origami(n, h, v)


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1)


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e


def save(doc: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(doc))
        f.write("\n")


def load(path) -> dict:
    with open(path, "r", encoding="utf-8") as f:
        return loads(f.read())


def serialize(s: TranslationSurface) -> str:
    """Surface to document text (lossless in exact mode)."""
    return dumps(surface_to_document(s))


def deserialize(text: str) -> TranslationSurface:
    return surface_from_document(loads(text))
