"""SVG 1.1 drawings of triangulations.

Annuli are drawn cut open: the fundamental domain is a rectangle whose two
dashed verticals are identified.  Every arc becomes one ``<path>``.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from fractions import Fraction

from .annulus import AnnulusTriangulation, LEFT, PuncturedDisc, disc_to_annulus
from .classifier import TriangulatedPolygon
from .strip import StripTriangulation

SVG_NS = "http://www.w3.org/2000/svg"
HEIGHT = 200.0
MARGIN = 40.0
STYLE = (
    ".boundary{stroke:#000;stroke-width:2}"
    ".identification{stroke:#777;stroke-dasharray:6 4}"
    ".arc{fill:none;stroke:#1f5fa8;stroke-width:1.5}"
    ".asymptotic{fill:none;stroke:#a8321f;stroke-width:1.5}"
    "text{font-family:sans-serif;font-size:12px}"
)


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _root(width: float, height: float) -> ET.Element:
    ET.register_namespace("", SVG_NS)
    root = ET.Element(f"{{{SVG_NS}}}svg", {
        "version": "1.1",
        "width": _fmt(width),
        "height": _fmt(height),
        "viewBox": f"0 0 {_fmt(width)} {_fmt(height)}",
    })
    ET.SubElement(root, f"{{{SVG_NS}}}style").text = STYLE
    return root


def _el(parent, tag, **attrs):
    return ET.SubElement(parent, f"{{{SVG_NS}}}{tag}", {k.rstrip("_").replace("_", "-"): v for k, v in attrs.items()})


def _line(parent, x1, y1, x2, y2, cls):
    _el(parent, "line", x1=_fmt(x1), y1=_fmt(y1), x2=_fmt(x2), y2=_fmt(y2), class_=cls)


def _text(parent, x, y, label):
    t = _el(parent, "text", x=_fmt(x), y=_fmt(y), text_anchor="middle")
    t.text = str(label)


def _to_string(root) -> str:
    return ET.tostring(root, encoding="unicode") + "\n"


def _bulge(x1, x2, y, direction):
    """Quadratic curve between two points of one boundary line."""
    h = min(0.8 * HEIGHT, 0.35 * abs(x2 - x1) + 15)
    mid = (x1 + x2) / 2
    return f"M {_fmt(x1)} {_fmt(y)} Q {_fmt(mid)} {_fmt(y + direction * h)} {_fmt(x2)} {_fmt(y)}"


def render_annulus(T: AnnulusTriangulation) -> str:
    n, m = T.n, T.m
    lower_step = m if m else 1
    width = n * lower_step
    lifts = T.lifts()
    xs = [0, width]
    for l in lifts:
        if l[0] == "L":
            xs += [l[1] * lower_step, l[2] * lower_step]
        elif l[0] == "U":
            xs += [l[1] * n, l[2] * n]
        elif l[0] == "B":
            xs += [l[1] * lower_step, l[2] * n]
        else:
            xs += [-width / 2, 1.5 * width]
    lo, hi = min(xs), max(xs)
    scale = 480.0 / max(width, 1)
    offset = MARGIN - lo * scale

    def X(v):
        return offset + v * scale

    y_top, y_bot = MARGIN, MARGIN + HEIGHT
    root = _root((hi - lo) * scale + 2 * MARGIN, HEIGHT + 2 * MARGIN)
    _line(root, X(lo), y_bot, X(hi), y_bot, "boundary")
    _line(root, X(lo), y_top, X(hi), y_top, "boundary")
    for v in (0, width):
        _line(root, X(v), y_top, X(v), y_bot, "identification")
    y_mid = (y_top + y_bot) / 2
    for l in lifts:
        k = l[0]
        if k == "L":
            d = _bulge(X(l[1] * lower_step), X(l[2] * lower_step), y_bot, -1)
            cls = "arc"
        elif k == "U":
            d = _bulge(X(l[1] * n), X(l[2] * n), y_top, 1)
            cls = "arc"
        elif k == "B":
            d = f"M {_fmt(X(l[1] * lower_step))} {_fmt(y_bot)} L {_fmt(X(l[2] * n))} {_fmt(y_top)}"
            cls = "arc"
        else:
            base = X(l[1] * (lower_step if k == "AL" else n))
            y0 = y_bot if k == "AL" else y_top
            y1 = y_mid + (12 if k == "AL" else -12)
            end = X(lo) if l[2] == LEFT else X(hi)
            d = (f"M {_fmt(base)} {_fmt(y0)} Q {_fmt(base)} {_fmt(y1)} "
                 f"{_fmt((base + end) / 2)} {_fmt(y1)} L {_fmt(end)} {_fmt(y1)}")
            cls = "asymptotic"
        _el(root, "path", d=d, class_=cls)
    for k in range(math.floor(lo / lower_step), math.ceil(hi / lower_step) + 1):
        _text(root, X(k * lower_step), y_bot + 18, k % n + 1)
    if m:
        for k in range(math.floor(lo / n), math.ceil(hi / n) + 1):
            _text(root, X(k * n), y_top - 8, k % m + n + 1)
    return _to_string(root)


def render_strip(S: StripTriangulation) -> str:
    lo, hi = S.lower
    ups = list(S.upper)
    left = min([Fraction(lo)] + ups)
    right = max([Fraction(hi)] + ups)
    scale = 600.0 / max(float(right - left), 1.0)

    def X(v):
        return MARGIN + float(v - left) * scale

    y_top, y_bot = MARGIN, MARGIN + HEIGHT
    root = _root(float(right - left) * scale + 2 * MARGIN, HEIGHT + 2 * MARGIN)
    _line(root, X(left), y_bot, X(right), y_bot, "boundary")
    _line(root, X(left), y_top, X(right), y_top, "boundary")
    for a in S.arcs:
        if a.kind == "lower":
            d = _bulge(X(a.a), X(a.b), y_bot, -1)
        elif a.kind == "upper":
            d = _bulge(X(a.a), X(a.b), y_top, 1)
        else:
            d = f"M {_fmt(X(a.a))} {_fmt(y_bot)} L {_fmt(X(a.b))} {_fmt(y_top)}"
        _el(root, "path", d=d, class_="arc")
    for x in range(lo, hi + 1):
        _text(root, X(x), y_bot + 18, x)
    return _to_string(root)


def render_polygon(P: TriangulatedPolygon) -> str:
    r = 180.0
    c = r + MARGIN
    pts = {}
    for v in range(1, P.n + 1):
        t = 2 * math.pi * (v - 1) / P.n - math.pi / 2
        pts[v] = (c + r * math.cos(t), c + r * math.sin(t))
    root = _root(2 * c, 2 * c)
    outline = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts.values())
    _el(root, "polygon", points=outline, class_="boundary", fill="none")
    for u, v in P.diagonals:
        (x1, y1), (x2, y2) = pts[u], pts[v]
        _el(root, "path", d=f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}", class_="arc")
    for v, (x, y) in pts.items():
        _text(root, c + (x - c) * 1.1, c + (y - c) * 1.1 + 4, v)
    return _to_string(root)


def render(obj) -> str:
    if isinstance(obj, AnnulusTriangulation):
        return render_annulus(obj)
    if isinstance(obj, PuncturedDisc):
        return render_annulus(disc_to_annulus(obj))
    if isinstance(obj, StripTriangulation):
        return render_strip(obj)
    if isinstance(obj, TriangulatedPolygon):
        return render_polygon(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
