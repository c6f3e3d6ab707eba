"""JSON forms of triangulations.

Output is deterministic: keys sorted, arcs in a fixed order, rationals
written as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .annulus import (
    ADIC,
    INNER,
    OUTER,
    PRUFER,
    AnnulusTriangulation,
    Asymptotic,
    Bridging,
    Central,
    Peripheral,
    PuncturedDisc,
)
from .classifier import TriangulatedPolygon
from .core import QuiddityRow
from .strip import StripArc, StripTriangulation


class SchemaError(ValueError):
    """Input JSON does not describe a triangulation."""


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _parse_rational(s) -> Fraction:
    try:
        return Fraction(s)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError(f"not a rational: {s!r}") from None


def _row_json(q: QuiddityRow | None):
    if q is None:
        return None
    return {"background": list(q.background), "window": list(q.window), "lo": q.lo}


def _peripheral_json(a: Peripheral, n: int, m: int) -> dict:
    return {"kind": "peripheral", "boundary": a.boundary, "from": a.start,
            "to": a.end(n, m), "span": a.span}


def annulus_to_json(T: AnnulusTriangulation) -> dict:
    arcs = []
    for a in T.sorted_arcs():
        if isinstance(a, Peripheral):
            arcs.append(_peripheral_json(a, T.n, T.m))
        elif isinstance(a, Bridging):
            arcs.append({"kind": "bridging", "from": a.outer, "to": a.inner, "winding": a.winding})
        else:
            arcs.append({"kind": a.kind, "at": a.at})
    return {"surface": "annulus", "n": T.n, "m": T.m, "arcs": arcs}


def disc_to_json(D: PuncturedDisc) -> dict:
    arcs = []
    for a in D.sorted_arcs():
        if isinstance(a, Central):
            arcs.append({"kind": "central", "at": a.at})
        else:
            arcs.append(_peripheral_json(a, D.n, 0))
    return {"surface": "disc", "n": D.n, "arcs": arcs}


def polygon_to_json(P: TriangulatedPolygon) -> dict:
    return {"surface": "polygon", "n": P.n, "diagonals": [list(d) for d in P.diagonals]}


def strip_to_json(S: StripTriangulation) -> dict:
    arcs = []
    for a in S.arcs:
        if a.kind == "bridging":
            arcs.append({"kind": "bridging", "from": a.a, "to": _rational(a.b)})
        elif a.kind == "lower":
            arcs.append({"kind": "peripheral", "boundary": "lower", "from": a.a, "to": a.b})
        else:
            arcs.append({"kind": "peripheral", "boundary": "upper",
                         "from": _rational(a.a), "to": _rational(a.b)})
    return {
        "surface": "strip",
        "lower_window": list(S.lower),
        "upper": [_rational(u) for u in S.upper],
        "core": list(S.core),
        "spill": S.spill,
        "window": _row_json(S.source),
        "arcs": arcs,
    }


def to_json(obj) -> dict:
    if isinstance(obj, AnnulusTriangulation):
        return annulus_to_json(obj)
    if isinstance(obj, PuncturedDisc):
        return disc_to_json(obj)
    if isinstance(obj, StripTriangulation):
        return strip_to_json(obj)
    if isinstance(obj, TriangulatedPolygon):
        return polygon_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# -- parsing ------------------------------------------------------------------------


def _int(d: dict, key: str) -> int:
    if key not in d:
        raise SchemaError(f"missing field {key!r}")
    v = d[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"field {key!r} must be an integer, got {v!r}")
    return v


def _peripheral_from(d: dict, n: int, m: int) -> Peripheral:
    boundary = d.get("boundary")
    if boundary not in (OUTER, INNER):
        raise SchemaError(f"peripheral boundary must be outer or inner, got {boundary!r}")
    start, end = _int(d, "from"), _int(d, "to")
    size = n if boundary == OUTER else m
    if size == 0:
        raise SchemaError("peripheral arc on an empty boundary")
    if "span" in d:
        span = _int(d, "span")
        offset = 0 if boundary == OUTER else n
        if (start - offset - 1 + span) % size != (end - offset - 1) % size:
            raise SchemaError(f"span {span} does not lead from {start} to {end}")
    else:
        span = (end - start) % size or size
    return Peripheral(boundary, start, span)


def annulus_from_json(d: dict) -> AnnulusTriangulation:
    n, m = _int(d, "n"), _int(d, "m")
    if n < 1 or m < 0:
        raise SchemaError("need n >= 1 and m >= 0")
    arcs = set()
    for a in _arcs(d):
        kind = a.get("kind")
        if kind == "peripheral":
            arcs.add(_peripheral_from(a, n, m))
        elif kind == "bridging":
            winding = _int(a, "winding") if "winding" in a else 0
            arcs.add(Bridging(_int(a, "from"), _int(a, "to"), winding))
        elif kind in (ADIC, PRUFER):
            at = _int(a, "at")
            arcs.add(Asymptotic(OUTER if at <= n else INNER, at, kind))
        else:
            raise SchemaError(f"unknown arc kind {kind!r}")
    return AnnulusTriangulation(n, m, frozenset(arcs))


def disc_from_json(d: dict) -> PuncturedDisc:
    n = _int(d, "n")
    arcs = set()
    for a in _arcs(d):
        kind = a.get("kind")
        if kind == "central":
            arcs.add(Central(_int(a, "at")))
        elif kind == "peripheral":
            arcs.add(_peripheral_from(a, n, 0))
        else:
            raise SchemaError(f"unknown disc arc kind {kind!r}")
    return PuncturedDisc(n, frozenset(arcs))


def polygon_from_json(d: dict) -> TriangulatedPolygon:
    n = _int(d, "n")
    diags = d.get("diagonals")
    if not isinstance(diags, list):
        raise SchemaError("diagonals must be a list")
    out = []
    for pair in diags:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) for v in pair)):
            raise SchemaError(f"bad diagonal {pair!r}")
        out.append(tuple(sorted(pair)))
    return TriangulatedPolygon(n, tuple(sorted(out)))


def strip_from_json(d: dict) -> StripTriangulation:
    win = d.get("lower_window")
    if not (isinstance(win, list) and len(win) == 2 and all(isinstance(v, int) for v in win)):
        raise SchemaError("lower_window must be [lo, hi]")
    upper = d.get("upper")
    if not isinstance(upper, list):
        raise SchemaError("upper must be a list")
    ups = tuple(_parse_rational(u) for u in upper)
    core = d.get("core", [win[0] + 1, win[1] - 1])
    if not (isinstance(core, list) and len(core) == 2):
        raise SchemaError("core must be [lo, hi]")
    arcs = []
    for a in _arcs(d):
        kind = a.get("kind")
        if kind == "bridging":
            arcs.append(StripArc("bridging", _int(a, "from"), _parse_rational(a.get("to"))))
        elif kind == "peripheral" and a.get("boundary") == "lower":
            arcs.append(StripArc("lower", _int(a, "from"), _int(a, "to")))
        elif kind == "peripheral" and a.get("boundary") == "upper":
            arcs.append(StripArc("upper", _parse_rational(a.get("from")), _parse_rational(a.get("to"))))
        else:
            raise SchemaError(f"unknown strip arc {a!r}")
    source = None
    w = d.get("window")
    if w is not None:
        try:
            source = QuiddityRow(tuple(w["background"]), tuple(w["window"]), w["lo"])
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(f"bad window: {e}") from None
    return StripTriangulation(lower=tuple(win), upper=ups, arcs=tuple(arcs), core=tuple(core),
                              spill=d.get("spill", 0), source=source)


def _arcs(d: dict) -> list:
    arcs = d.get("arcs")
    if not isinstance(arcs, list) or not all(isinstance(a, dict) for a in arcs):
        raise SchemaError("arcs must be a list of objects")
    return arcs


def from_json(d) -> object:
    if not isinstance(d, dict):
        raise SchemaError("top level must be an object")
    surface = d.get("surface")
    try:
        if surface == "annulus":
            return annulus_from_json(d)
        if surface == "disc":
            return disc_from_json(d)
        if surface == "strip":
            return strip_from_json(d)
        if surface == "polygon":
            return polygon_from_json(d)
    except SchemaError:
        raise
    except (TypeError, ValueError) as e:
        raise SchemaError(str(e)) from None
    raise SchemaError(f"unknown surface {surface!r}")


def loads(text: str):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from None
    return from_json(payload)
