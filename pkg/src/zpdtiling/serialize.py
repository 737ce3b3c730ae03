"""JSON formats for every exchangeable object.

Rationals always travel as exact strings ("a/b", or "a" when integral) so
arbitrary precision survives any JSON parser; output dictionaries are
dumped with sorted keys and fixed separators so byte-identical golden
files are possible.  Parsers raise InputError with a field diagnostic.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .funcs import Decomposition, RayFn
from .groups import Group, group
from .sets import PointSet
from .tuples import FourTuple
from .weakpd import Certificate


def rational_to_str(v) -> str:
    f = Fraction(v)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def rational_from_json(obj, where: str):
    if isinstance(obj, bool):
        raise InputError(f"{where}: expected a rational, got a boolean")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            f = Fraction(obj)
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"{where}: bad rational {obj!r} ({e})") from None
        return int(f) if f.denominator == 1 else f
    raise InputError(f"{where}: expected a rational string, got {type(obj).__name__}")


def _group_from_json(obj, where: str) -> Group:
    for key in ("p", "d"):
        if key not in obj:
            raise InputError(f"{where}: missing field {key!r}")
        if not isinstance(obj[key], int):
            raise InputError(f"{where}.{key}: expected an integer")
    try:
        return group(obj["p"], obj["d"])
    except ValueError as e:
        raise InputError(f"{where}: {e}") from None


def point_from_json(g: Group, obj, where: str):
    if not isinstance(obj, list) or not all(isinstance(c, int) for c in obj):
        raise InputError(f"{where}: a point is a list of integers")
    try:
        return g.check_point(tuple(obj))
    except ValueError as e:
        raise InputError(f"{where}: {e}") from None


def pointset_to_json(a: PointSet) -> dict:
    return {
        "p": a.group.p,
        "d": a.group.d,
        "elems": [list(x) for x in a.elems],
    }


def pointset_from_json(obj) -> PointSet:
    if not isinstance(obj, dict):
        raise InputError("point set: expected a JSON object")
    g = _group_from_json(obj, "point set")
    elems = obj.get("elems")
    if not isinstance(elems, list) or not elems:
        raise InputError("point set.elems: expected a nonempty list of points")
    pts = [point_from_json(g, e, f"point set.elems[{i}]") for i, e in enumerate(elems)]
    return PointSet(g, tuple(pts))


def rayfn_to_json(f: RayFn) -> dict:
    lines = [
        {"rep": list(f.group.lines[li].rep), "value": rational_to_str(v)}
        for li, v in enumerate(f.line_values)
        if v != 0
    ]
    return {
        "p": f.group.p,
        "d": f.group.d,
        "at_zero": rational_to_str(f.at_zero),
        "lines": lines,
    }


def rayfn_from_json(obj) -> RayFn:
    if not isinstance(obj, dict):
        raise InputError("ray function: expected a JSON object")
    g = _group_from_json(obj, "ray function")
    at_zero = rational_from_json(obj.get("at_zero", "0"), "ray function.at_zero")
    values = [0] * g.num_lines
    seen = set()
    for i, entry in enumerate(obj.get("lines", [])):
        where = f"ray function.lines[{i}]"
        if not isinstance(entry, dict) or "rep" not in entry or "value" not in entry:
            raise InputError(f"{where}: expected an object with rep and value")
        rep = point_from_json(g, entry["rep"], f"{where}.rep")
        if all(c == 0 for c in rep):
            raise InputError(f"{where}.rep: the origin is not on a punctured line")
        li = g.line_index(g.line_of(rep))
        if li in seen:
            raise InputError(f"{where}.rep: duplicate line")
        seen.add(li)
        values[li] = rational_from_json(entry["value"], f"{where}.value")
    return RayFn(g, at_zero, tuple(values))


def certificate_to_json(cert: Certificate) -> dict:
    out = {
        "h": rayfn_to_json(cert.h),
        "provenance": cert.provenance,
    }
    if cert.for_set is not None:
        out["A"] = pointset_to_json(cert.for_set)
    return out


def fourtuple_to_json(t: FourTuple) -> dict:
    return {
        "f": rayfn_to_json(t.f),
        "h": rayfn_to_json(t.h),
        "fhat": rayfn_to_json(t.fhat),
        "hhat": rayfn_to_json(t.hhat),
    }


def fourtuple_from_json(obj) -> FourTuple:
    if not isinstance(obj, dict):
        raise InputError("tuple: expected a JSON object")
    fns = {}
    for key in ("f", "h", "fhat", "hhat"):
        if key not in obj:
            raise InputError(f"tuple: missing member {key!r}")
        fns[key] = rayfn_from_json(obj[key])
    if len({fn.group for fn in fns.values()}) != 1:
        raise InputError("tuple: members live on different groups")
    return FourTuple(**fns)


def decomposition_to_json(dec: Decomposition) -> dict:
    g = dec.group
    return {
        "w": rational_to_str(dec.w),
        "hyperplanes": [
            {"normal": list(g.lines[ni].rep), "value": rational_to_str(c)}
            for ni, c in enumerate(dec.plane_values)
            if c != 0
        ],
        "lines": [
            {"rep": list(g.lines[li].rep), "value": rational_to_str(v)}
            for li, v in enumerate(dec.line_values)
            if v != 0
        ],
        "m": rational_to_str(dec.m),
    }


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
