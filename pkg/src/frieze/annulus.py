"""Triangulated annuli ``A(n, m)``, their universal cover, and realizations of
periodic infinite frieze rows.

Labels follow the usual convention: outer marked points are ``1..n``, inner
ones ``n+1..n+m``.  Internally everything happens in the universal cover with
unit spacing on each boundary: outer point ``i`` lifts to ``x = i - 1 + t*n``
on the lower line, inner point ``p`` lifts to ``y = p - n - 1 + t*m`` on the
upper line, and the deck transformation is ``(x, y) -> (x + n, y + m)``.
Only the order of points along each boundary matters for crossings, so this
is equivalent to the metric cover (see :class:`CoverLayout`).

A bridging arc from outer ``i`` to inner ``p`` with winding ``w`` is the lift
``(i - 1, p - n - 1 + w*m)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .classifier import ClassificationError, classify
from .core import QuiddityRow

OUTER = "outer"
INNER = "inner"
ADIC = "adic"
PRUFER = "prufer"
LEFT = "left"
RIGHT = "right"

DEFAULT_WINDING_BOUND = 2


class InvalidTriangulation(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# -- arcs -------------------------------------------------------------------


@dataclass(frozen=True)
class Peripheral:
    """Arc with both ends on one boundary, running rightwards from ``start``
    over ``span`` boundary segments (``span`` equal to the number of points
    on that boundary makes a loop)."""

    boundary: str
    start: int
    span: int

    def end(self, n: int, m: int) -> int:
        if self.boundary == OUTER:
            return (self.start - 1 + self.span) % n + 1
        return (self.start - n - 1 + self.span) % m + n + 1


@dataclass(frozen=True)
class Bridging:
    outer: int
    inner: int
    winding: int = 0


@dataclass(frozen=True)
class Asymptotic:
    """Arc spiralling towards the meridian; ``kind`` is ``adic`` or ``prufer``."""

    boundary: str
    at: int
    kind: str

    @property
    def direction(self) -> str:
        # adic arcs leave the outer boundary towards the left of the cut-open
        # picture; seen from the inner boundary the orientation flips
        if self.boundary == OUTER:
            return LEFT if self.kind == ADIC else RIGHT
        return LEFT if self.kind == PRUFER else RIGHT


Arc = Union[Peripheral, Bridging, Asymptotic]


def arc_sort_key(arc: Arc):
    if isinstance(arc, Peripheral):
        return (0 if arc.boundary == OUTER else 1, arc.start, arc.span, 0)
    if isinstance(arc, Bridging):
        return (2, arc.outer, arc.inner, arc.winding)
    return (3 if arc.boundary == OUTER else 4, arc.at, 0 if arc.kind == ADIC else 1, 0)


def peripheral(boundary: str, start: int, end: int, n: int, m: int, span: int | None = None) -> Peripheral:
    """Peripheral arc ``[start, end]``; the span defaults to the shorter
    rightward run, or the full boundary for a loop."""
    if span is None:
        size = n if boundary == OUTER else m
        if size == 0:
            raise ValueError("no points on that boundary")
        span = (end - start) % size or size
    return Peripheral(boundary, start, span)


# -- cover lifts --------------------------------------------------------------
# A lift is a tuple: ("L", a, b) / ("U", a, b) peripheral with a < b,
# ("B", x, y) bridging, ("AL", x, dir) / ("AU", y, dir) asymptotic.


def _lift(arc: Arc, n: int, m: int) -> tuple:
    if isinstance(arc, Peripheral):
        if arc.boundary == OUTER:
            a = arc.start - 1
            return ("L", a, a + arc.span)
        a = arc.start - n - 1
        return ("U", a, a + arc.span)
    if isinstance(arc, Bridging):
        return ("B", arc.outer - 1, arc.inner - n - 1 + arc.winding * m)
    if arc.boundary == OUTER:
        return ("AL", arc.at - 1, arc.direction)
    return ("AU", arc.at - n - 1, arc.direction)


def _translate(lift: tuple, t: int, n: int, m: int) -> tuple:
    kind = lift[0]
    if kind == "L":
        return ("L", lift[1] + t * n, lift[2] + t * n)
    if kind == "U":
        return ("U", lift[1] + t * m, lift[2] + t * m)
    if kind == "B":
        return ("B", lift[1] + t * n, lift[2] + t * m)
    if kind == "AL":
        return ("AL", lift[1] + t * n, lift[2])
    return ("AU", lift[1] + t * m, lift[2])


def _arc_from_lift(lift: tuple, n: int, m: int) -> Arc:
    kind = lift[0]
    if kind == "L":
        a, b = lift[1], lift[2]
        return Peripheral(OUTER, a % n + 1, b - a)
    if kind == "U":
        a, b = lift[1], lift[2]
        return Peripheral(INNER, a % m + n + 1, b - a)
    if kind == "B":
        x, y = lift[1], lift[2]
        t = x // n
        y -= t * m
        return Bridging(x % n + 1, y % m + n + 1, y // m)
    if kind == "AL":
        return Asymptotic(OUTER, lift[1] % n + 1, ADIC if lift[2] == LEFT else PRUFER)
    return Asymptotic(INNER, lift[1] % m + n + 1, PRUFER if lift[2] == LEFT else ADIC)


def _lifts_cross(p: tuple, q: tuple) -> bool:
    """Do two specific lifts cross?  Asymptotic/bridging clashes are handled
    at the arc level, not here."""
    kp, kq = p[0], q[0]
    if kp > kq:
        p, q, kp, kq = q, p, kq, kp
    if kp == kq and kp in ("L", "U"):
        a, b, c, d = p[1], p[2], q[1], q[2]
        return a < c < b < d or c < a < d < b
    if kp == "B" and kq == "B":
        return (p[1] - q[1]) * (p[2] - q[2]) < 0
    if kp == "B" and kq == "L":
        return q[1] < p[1] < q[2]
    if kp == "B" and kq == "U":
        return q[1] < p[2] < q[2]
    if kp == "AL" and kq == "L":
        return q[1] < p[1] < q[2]
    if kp == "AU" and kq == "U":
        return q[1] < p[1] < q[2]
    return False


def _translation_radius(arcs: Iterable[Arc]) -> int:
    w = max((abs(a.winding) for a in arcs if isinstance(a, Bridging)), default=0)
    return 2 * w + 3


def arcs_compatible(first: Arc, second: Arc, n: int, m: int, radius: int | None = None) -> bool:
    """Whether two arcs of ``A(n, m)`` have non-crossing representatives.

    One arc is lifted once; the other is tested in every translate within
    ``radius`` deck transformations.
    """
    kinds = {type(first), type(second)}
    if Bridging in kinds and Asymptotic in kinds:
        return False
    if isinstance(first, Asymptotic) and isinstance(second, Asymptotic):
        # rays from opposite boundaries approach the meridian from opposite
        # sides; on one boundary they must spiral the same way
        return first.boundary != second.boundary or first.direction == second.direction
    if radius is None:
        radius = _translation_radius([first, second])
    p = _lift(first, n, m)
    q = _lift(second, n, m)
    for t in range(-radius, radius + 1):
        if _lifts_cross(p, _translate(q, t, n, m)):
            return False
    return True


# -- triangulations -------------------------------------------------------------


@dataclass(frozen=True)
class CoverLayout:
    """The universal cover ``U(n, m)`` with its metric coordinates.

    Lower lifts of outer points sit at ``k*m`` (``k`` when ``m == 0``), upper
    lifts of inner points at ``k*n``; a fundamental domain is ``n*m`` wide.
    """

    n: int
    m: int

    @property
    def width(self) -> int:
        return self.n * self.m if self.m else self.n

    def lift(self, point: int, k: int = 0) -> tuple[int, int]:
        n, m = self.n, self.m
        if 1 <= point <= n:
            step = m if m else 1
            return ((point - 1) * step + k * self.width, 0)
        if n < point <= n + m:
            return ((point - n - 1) * n + k * self.width, 1)
        raise ValueError(f"no marked point {point} in A({n}, {m})")

    def project(self, xy: tuple[int, int]) -> int:
        x, h = xy
        n, m = self.n, self.m
        r = x % self.width
        if h == 0:
            step = m if m else 1
            if r % step:
                raise ValueError(f"{xy} is not a marked point")
            return r // step + 1
        if m == 0 or r % n:
            raise ValueError(f"{xy} is not a marked point")
        return r // n + n + 1

    def unit_to_cover(self, lower_unit=None, upper_unit=None):
        """Convert unit-spaced lift coordinates to metric ones."""
        if lower_unit is not None:
            return lower_unit * (self.m if self.m else 1)
        return upper_unit * self.n


@dataclass
class TriangulationReport:
    ok: bool
    problems: list[str] = field(default_factory=list)
    crossings: list[tuple[Arc, Arc]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class AnnulusTriangulation:
    n: int
    m: int
    arcs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(self.arcs))

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs, key=arc_sort_key)

    @property
    def layout(self) -> CoverLayout:
        return CoverLayout(self.n, self.m)

    @property
    def is_asymptotic(self) -> bool:
        return any(isinstance(a, Asymptotic) for a in self.arcs)

    def lifts(self) -> list[tuple]:
        return [_lift(a, self.n, self.m) for a in self.sorted_arcs()]

    def bridging_count(self) -> Counter:
        """Bridging arcs per outer point (``r_i``)."""
        return Counter(a.outer for a in self.arcs if isinstance(a, Bridging))


def _label_problems(T: AnnulusTriangulation, winding_bound: int) -> list[str]:
    n, m = T.n, T.m
    out = []
    if n < 1 or m < 0:
        out.append(f"A({n}, {m}) needs n >= 1 and m >= 0")
        return out
    for a in T.sorted_arcs():
        if isinstance(a, Peripheral):
            if a.boundary == OUTER:
                if not 1 <= a.start <= n:
                    out.append(f"{a}: no outer point {a.start}")
                if not 2 <= a.span <= n:
                    out.append(f"{a}: span must lie in 2..{n}")
            else:
                if not n < a.start <= n + m:
                    out.append(f"{a}: no inner point {a.start}")
                if not 2 <= a.span <= m:
                    out.append(f"{a}: span must lie in 2..{m}")
        elif isinstance(a, Bridging):
            if not 1 <= a.outer <= n or not n < a.inner <= n + m:
                out.append(f"{a}: endpoints must be outer then inner")
            if abs(a.winding) > winding_bound:
                out.append(f"{a}: winding exceeds bound {winding_bound}")
        else:
            lo, hi = (1, n) if a.boundary == OUTER else (n + 1, n + m)
            if not lo <= a.at <= hi:
                out.append(f"{a}: no {a.boundary} point {a.at}")
            if a.kind not in (ADIC, PRUFER):
                out.append(f"{a}: unknown asymptotic kind")
    return out


def check_triangulation(T: AnnulusTriangulation, winding_bound: int = DEFAULT_WINDING_BOUND) -> TriangulationReport:
    """Pairwise compatibility of all arcs plus the arc count ``n + m``."""
    problems = _label_problems(T, winding_bound)
    if problems:
        return TriangulationReport(False, problems)
    arcs = T.sorted_arcs()
    crossings = []
    radius = _translation_radius(arcs)
    for i, a in enumerate(arcs):
        # an arc must not cross its own translates either
        if not arcs_compatible(a, a, T.n, T.m, radius) and not isinstance(a, Asymptotic):
            crossings.append((a, a))
        for b in arcs[i + 1:]:
            if not arcs_compatible(a, b, T.n, T.m, radius):
                crossings.append((a, b))
    for a, b in crossings:
        problems.append(f"incompatible arcs {describe_arc(a, T.n)} and {describe_arc(b, T.n)}")
    if len(arcs) != T.n + T.m:
        problems.append(f"arc count {len(arcs)} != n + m = {T.n + T.m}")
    return TriangulationReport(not problems, problems, crossings)


def describe_arc(a: Arc, n: int) -> str:
    if isinstance(a, Peripheral):
        return f"[{a.start},+{a.span}]({a.boundary})"
    if isinstance(a, Bridging):
        w = f"~{a.winding}" if a.winding else ""
        return f"[{a.outer},{a.inner}]{w}"
    sym = "alpha" if a.kind == ADIC else "pi"
    return f"{sym}_{a.at}"


def _require_valid(T, winding_bound=DEFAULT_WINDING_BOUND):
    report = check_triangulation(T, winding_bound)
    if not report.ok:
        raise InvalidTriangulation("; ".join(report.problems), report)


def outer_quiddity(T: AnnulusTriangulation, validate: bool = True) -> tuple[int, ...]:
    """Triangles at each outer point: one more than the number of arc ends
    arriving at a fixed lift of it."""
    if validate:
        _require_valid(T)
    counts = [1] * T.n
    for lift in T.lifts():
        kind = lift[0]
        if kind == "L":
            counts[lift[1] % T.n] += 1
            counts[lift[2] % T.n] += 1
        elif kind in ("B", "AL"):
            counts[lift[1] % T.n] += 1
    return tuple(counts)


# -- working copy in the cover -----------------------------------------------------


class _Cover:
    """Mutable list of representative lifts used by the surgeries."""

    def __init__(self, n: int, m: int, lifts: Iterable[tuple]):
        self.n = n
        self.m = m
        self.lifts = list(lifts)

    @classmethod
    def of(cls, T: AnnulusTriangulation) -> "_Cover":
        return cls(T.n, T.m, T.lifts())

    def build(self) -> AnnulusTriangulation:
        arcs = {_arc_from_lift(l, self.n, self.m) for l in self.lifts}
        if len(arcs) != len(self.lifts):
            raise InvalidTriangulation("surgery produced a duplicate arc")
        return AnnulusTriangulation(self.n, self.m, frozenset(arcs))

    def _map_lower(self, p: int):
        n = self.n

        def f(x):
            t, r = divmod(x, n)
            return r + (1 if r >= p else 0) + t * (n + 1)

        return f

    def _map_upper(self, p: int):
        m = self.m

        def g(y):
            t, r = divmod(y, m)
            return r + (1 if r >= p else 0) + t * (m + 1)

        return g

    def insert_lower(self, p: int):
        """New outer point with residue ``p``; old residues ``>= p`` move up.
        Returns the coordinate map for old lifts."""
        f = self._map_lower(p)
        out = []
        for l in self.lifts:
            k = l[0]
            if k == "L":
                out.append(("L", f(l[1]), f(l[2])))
            elif k == "B":
                out.append(("B", f(l[1]), l[2]))
            elif k == "AL":
                out.append(("AL", f(l[1]), l[2]))
            else:
                out.append(l)
        self.lifts = out
        self.n += 1
        return f

    def insert_upper(self, p: int):
        if self.m == 0:
            self.m = 1
            return lambda y: y
        g = self._map_upper(p)
        out = []
        for l in self.lifts:
            k = l[0]
            if k == "U":
                out.append(("U", g(l[1]), g(l[2])))
            elif k == "B":
                out.append(("B", l[1], g(l[2])))
            elif k == "AU":
                out.append(("AU", g(l[1]), l[2]))
            else:
                out.append(l)
        self.lifts = out
        self.m += 1
        return g

    def translates_touching_lower(self, x: int, radius: int = 4):
        """Pairs ``(index, lift)`` of translates with an endpoint at lower ``x``."""
        out = []
        for idx, l in enumerate(self.lifts):
            for t in range(-radius, radius + 1):
                tl = _translate(l, t, self.n, self.m)
                k = tl[0]
                if (k == "L" and x in (tl[1], tl[2])) or (k in ("B", "AL") and tl[1] == x):
                    out.append((idx, tl))
        return out

    def translates_touching_upper(self, y: int, radius: int = 4):
        out = []
        for idx, l in enumerate(self.lifts):
            for t in range(-radius, radius + 1):
                tl = _translate(l, t, self.n, self.m)
                k = tl[0]
                if (k == "U" and y in (tl[1], tl[2])) or (k == "B" and tl[2] == y) or (k == "AU" and tl[1] == y):
                    out.append((idx, tl))
        return out

    def has_upper_edge(self, a, b, radius=4) -> bool:
        if b - a == 1:
            return True
        for idx, tl in self.translates_touching_upper(a, radius):
            if tl[0] == "U" and tl[1] == a and tl[2] == b:
                return True
        return False

    def _radius(self):
        arcs = [_arc_from_lift(l, self.n, self.m) for l in self.lifts] if self.m else []
        return _translation_radius(arcs) + 1


# -- constructions -------------------------------------------------------------------


def fan(entries: Sequence[int]) -> AnnulusTriangulation:
    """Bridging-only triangulation for an all->=2 sequence with some entry > 2.

    Above outer point ``i`` sit ``a_i - 2`` inner points joined to ``i``;
    one further arc per outer point goes to the next inner point on the right.
    """
    entries = tuple(entries)
    if min(entries) < 2 or max(entries) == 2:
        raise ValueError("fan needs entries >= 2 with at least one > 2")
    n = len(entries)
    m = sum(a - 2 for a in entries)
    lifts = []
    start = 0
    for x, a in enumerate(entries):
        d = a - 2
        for y in range(start, start + d + 1):
            lifts.append(("B", x, y))
        start += d
    return _Cover(n, m, lifts).build()


def all_adic(n: int) -> AnnulusTriangulation:
    return AnnulusTriangulation(n, 0, frozenset(Asymptotic(OUTER, i, ADIC) for i in range(1, n + 1)))


def _realize_base(base: tuple[int, ...]) -> AnnulusTriangulation:
    r = len(base)
    if min(base) >= 2:
        if max(base) == 2:
            return all_adic(r)
        return fan(base)
    if r != 2:
        raise ClassificationError(f"{base} is not an infinite stopping sequence")
    x = 0 if base[0] > 1 else 1
    a = base[x]
    loop = ("L", x, x + 2)
    if a == 4:
        return _Cover(2, 0, [loop, ("AL", x, LEFT)]).build()
    if a < 4:
        raise ClassificationError(f"{base} gives a finite frieze")
    m = a - 4
    lifts = [loop] + [("B", x, y) for y in range(0, m + 1)]
    return _Cover(2, m, lifts).build()


def recentre(T: AnnulusTriangulation) -> AnnulusTriangulation:
    """Shift the upper line so bridging windings are as small as possible.

    Sliding the inner boundary (a twist plus a relabelling of inner points)
    leaves the outer quiddity untouched.
    """
    ys = [l[2] for l in T.lifts() if l[0] == "B"]
    if not ys or T.m == 0:
        return T
    s = T.m // 2 - (min(ys) + max(ys)) // 2
    if s == 0:
        return T
    out = []
    for l in T.lifts():
        k = l[0]
        if k == "B":
            out.append(("B", l[1], l[2] + s))
        elif k == "U":
            out.append(("U", l[1] + s, l[2] + s))
        elif k == "AU":
            out.append(("AU", l[1] + s, l[2]))
        else:
            out.append(l)
    return _Cover(T.n, T.m, out).build()


def rotate_outer(T: AnnulusTriangulation, shift: int) -> AnnulusTriangulation:
    """Relabel outer point ``i`` as ``i + shift`` (cyclically)."""
    cov = _Cover.of(T)
    out = []
    for l in cov.lifts:
        k = l[0]
        if k == "L":
            out.append(("L", l[1] + shift, l[2] + shift))
        elif k in ("B", "AL"):
            out.append((k, l[1] + shift, l[2]))
        else:
            out.append(l)
    cov.lifts = out
    return cov.build()


def multiply_period(T: AnnulusTriangulation, s: int) -> AnnulusTriangulation:
    """``s`` consecutive fundamental domains read as one domain of ``A(sn, sm)``."""
    if s < 1:
        raise ValueError("multiplicity must be >= 1")
    if s == 1:
        return T
    n, m = T.n, T.m
    lifts = [_translate(l, t, n, m) for l in T.lifts() for t in range(s)]
    return _Cover(s * n, s * m, lifts).build()


def _insert_ear(T: AnnulusTriangulation) -> AnnulusTriangulation:
    """Append outer point ``n+1`` together with the peripheral arc ``[n, 1]``."""
    cov = _Cover.of(T)
    n = cov.n
    cov.insert_lower(n)
    cov.lifts.append(("L", n - 1, n + 1))
    return cov.build()


def realize(entries: Sequence[int]) -> AnnulusTriangulation:
    """Triangulation of ``A(n, m)`` with outer quiddity ``entries``, using the
    fewest inner points (``classify(entries).minimal_inner_points``)."""
    entries = tuple(entries)
    c = classify(entries)
    if not c.is_infinite:
        raise ClassificationError(f"{entries} is {c.outcome}; only infinite friezes live on annuli")
    T = _realize_base(c.trace.base)
    for step in reversed(c.trace.steps):
        T = multiply_period(T, step.multiplicity)
        T = _insert_ear(T)
        T = rotate_outer(T, step.removed + 1)
        T = recentre(T)
    return multiply_period(T, len(entries) // c.shortest_period)


def asymptotic_reduction(T: AnnulusTriangulation) -> AnnulusTriangulation:
    """Triangulation of ``A(n, 0)`` keeping the outer peripheral arcs and
    putting one adic arc at every outer point that carried bridging arcs."""
    _require_valid(T)
    arcs = set()
    for a in T.arcs:
        if isinstance(a, Peripheral) and a.boundary == OUTER:
            arcs.add(a)
        elif isinstance(a, Asymptotic) and a.boundary == OUTER:
            arcs.add(a)
    for i in T.bridging_count():
        arcs.add(Asymptotic(OUTER, i, ADIC))
    return AnnulusTriangulation(T.n, 0, frozenset(arcs))


# -- raising one quiddity entry ------------------------------------------------------


def bump_realization(T: AnnulusTriangulation, j: int) -> AnnulusTriangulation:
    """Triangulation of some ``A(n, m')``, ``m' >= m``, whose outer quiddity
    is that of ``T`` with entry ``j`` raised by one."""
    _require_valid(T)
    if not 1 <= j <= T.n:
        raise ValueError(f"no outer point {j}")
    cov = _Cover.of(T)
    x = j - 1
    radius = cov._radius()
    at = cov.translates_touching_lower(x, radius)
    asym = [tl for _, tl in at if tl[0] == "AL"]
    bridging = sorted(tl for _, tl in at if tl[0] == "B")
    if asym:
        result = _bump_asymptotic(cov, x)
    elif len(bridging) >= 2:
        result = _bump_many_bridging(cov, x, bridging)
    elif len(bridging) == 1:
        result = _bump_one_bridging(cov, x, bridging[0])
    elif T.is_asymptotic:
        result = _bump_by_rebuilding(T, j)
    else:
        result = _bump_covered(cov, x)
    result = recentre(result)
    _require_valid(result)
    return result


def _bump_asymptotic(cov: _Cover, x: int) -> AnnulusTriangulation:
    n = cov.n
    lower_bases = sorted({l[1] % n for l in cov.lifts if l[0] == "AL"})
    upper_bases = sorted({l[1] % cov.m for l in cov.lifts if l[0] == "AU"}) if cov.m else []
    cov.lifts = [l for l in cov.lifts if l[0] not in ("AL", "AU")]
    if cov.m == 0:
        cov.insert_upper(0)
        apex = 0
    else:
        if not upper_bases:
            raise InvalidTriangulation("asymptotic triangulation without inner asymptotic arcs")
        y1 = upper_bases[0]
        # fan from y1 over the other inner bases, closed by a loop at y1
        for ys in upper_bases[2:]:
            cov.lifts.append(("U", y1, ys))
        if len(upper_bases) >= 2:
            cov.lifts.append(("U", y1, y1 + cov.m))
        apex = y1
    for b in lower_bases:
        cov.lifts.append(("B", x + (b - x) % n, apex))
    cov.lifts.append(("B", x + n, apex))
    return cov.build()


def _bump_many_bridging(cov: _Cover, x: int, bridging: list[tuple]) -> AnnulusTriangulation:
    ys = sorted(tl[2] for tl in bridging)
    radius = cov._radius()
    pairs = list(zip(ys, ys[1:]))
    for y1, y2 in pairs:
        if y2 - y1 < 2:
            continue
        # inner peripheral arc closing the triangle at x: flip it
        for idx, tl in cov.translates_touching_upper(y1, radius):
            if tl[0] == "U" and tl[1] == y1 and tl[2] == y2:
                apex = next(z for z in range(y1 + 1, y2)
                            if cov.has_upper_edge(y1, z, radius) and cov.has_upper_edge(z, y2, radius))
                del cov.lifts[idx]
                cov.lifts.append(("B", x, apex))
                return cov.build()
    y1 = pairs[0][0]
    g = cov.insert_upper(y1 % cov.m + 1)
    cov.lifts.append(("B", x, g(y1) + 1))
    return cov.build()


def _bump_one_bridging(cov: _Cover, x: int, alpha: tuple) -> AnnulusTriangulation:
    r = alpha[2]
    radius = cov._radius()
    left = [tl[1] for _, tl in cov.translates_touching_upper(r, radius) if tl[0] == "B" and tl[1] < x]
    x_left = max(left)
    g = cov.insert_upper(r % cov.m)
    R = g(r)
    V = R - 1
    moves = []
    for idx, tl in cov.translates_touching_upper(R, radius + 1):
        if tl[0] == "U" and tl[2] == R and tl[1] < R:
            moves.append((idx, ("U", tl[1], V)))
        elif tl[0] == "B" and tl[1] <= x_left:
            moves.append((idx, ("B", tl[1], V)))
    for idx, new in moves:
        cov.lifts[idx] = new
    cov.lifts.append(("B", x, V))
    return cov.build()


def _bump_covered(cov: _Cover, x: int) -> AnnulusTriangulation:
    radius = cov._radius()
    over = []
    for idx, l in enumerate(cov.lifts):
        if l[0] != "L":
            continue
        for t in range(-radius, radius + 1):
            tl = _translate(l, t, cov.n, cov.m)
            if tl[1] < x < tl[2]:
                over.append((idx, tl))
    over.sort(key=lambda it: it[1][2] - it[1][1])
    k = len(over)
    p_first, p_last = over[-1][1][1], over[-1][1][2]
    verts = sorted({x} | {tl[1] for _, tl in over} | {tl[2] for _, tl in over})
    ends = Counter()
    for _, tl in over:
        ends[tl[1]] += 1
        ends[tl[2]] += 1
    need = [ends[v] for v in verts]
    need[0] += 1
    need[-1] += 1
    need[verts.index(x)] += 1
    left_tops = {tl[2] for _, tl in cov.translates_touching_lower(p_first, radius) if tl[0] == "B"}
    right_tops = {tl[2] for _, tl in cov.translates_touching_lower(p_last, radius) if tl[0] == "B"}
    apex = max(left_tops & right_tops)
    for idx in sorted({idx for idx, _ in over}, reverse=True):
        del cov.lifts[idx]
    s = k + 1
    for _ in range(s):
        g = cov.insert_upper(apex % cov.m + 1)
        apex = g(apex)
    # arcs at the apex to the right of (p_last, apex) move to the last new point
    moves = []
    for idx, tl in cov.translates_touching_upper(apex, radius + 2):
        if tl[0] == "B" and tl[1] >= p_last:
            moves.append((idx, ("B", tl[1], apex + s)))
        elif tl[0] == "U" and tl[1] == apex and tl[2] > apex:
            moves.append((idx, ("U", apex + s, tl[2])))
    for idx, new in moves:
        cov.lifts[idx] = new
    u = 0
    for i, v in enumerate(verts):
        for t in range(need[i]):
            arc = ("B", v, apex + u + t)
            if (i == 0 and t == 0) or (i == len(verts) - 1 and t == need[i] - 1):
                continue
            cov.lifts.append(arc)
        u += need[i] - 1
    assert u == s, "staircase does not close"
    return cov.build()


def _pad_inner(T: AnnulusTriangulation, m: int) -> AnnulusTriangulation:
    """Add inner points without changing the outer quiddity."""
    if T.m >= m:
        return T
    if T.m == 0:
        direction = next((a.direction for a in T.arcs if isinstance(a, Asymptotic)), LEFT)
        kind = PRUFER if direction == LEFT else ADIC
        arcs = set(T.arcs) | {Asymptotic(INNER, T.n + p, kind) for p in range(1, m + 1)}
        return AnnulusTriangulation(T.n, m, frozenset(arcs))
    cov = _Cover.of(T)
    while cov.m < m:
        g = cov.insert_upper(1)
        cov.lifts.append(("U", g(0), g(0) + 2))
    return cov.build()


def _bump_by_rebuilding(T: AnnulusTriangulation, j: int) -> AnnulusTriangulation:
    q = list(outer_quiddity(T))
    q[j - 1] += 1
    return _pad_inner(realize(q), T.m)


# -- punctured discs -------------------------------------------------------------------


@dataclass(frozen=True)
class Central:
    at: int


@dataclass(frozen=True)
class PuncturedDisc:
    """Triangulation of a disc with ``n`` boundary points and one puncture.

    Peripheral arcs are stored as outer :class:`Peripheral` arcs whose span
    runs along the side not containing the puncture.
    """

    n: int
    arcs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(self.arcs))

    def sorted_arcs(self):
        return sorted(self.arcs, key=lambda a: (1, a.at, 0) if isinstance(a, Central) else (0, a.start, a.span))

    def quiddity(self) -> tuple[int, ...]:
        return outer_quiddity(disc_to_annulus(self))


def disc_to_annulus(D: PuncturedDisc, kind: str = PRUFER) -> AnnulusTriangulation:
    """Replace every central arc by an asymptotic arc at the same point."""
    arcs = set()
    for a in D.arcs:
        if isinstance(a, Central):
            arcs.add(Asymptotic(OUTER, a.at, kind))
        elif isinstance(a, Peripheral) and a.boundary == OUTER:
            arcs.add(a)
        else:
            raise InvalidTriangulation(f"{a} is not an arc of a punctured disc")
    T = AnnulusTriangulation(D.n, 0, frozenset(arcs))
    _require_valid(T)
    return T


def annulus0_to_disc(T: AnnulusTriangulation) -> PuncturedDisc:
    if T.m != 0:
        raise InvalidTriangulation("only annuli without inner points correspond to punctured discs")
    _require_valid(T)
    arcs = set()
    for a in T.arcs:
        if isinstance(a, Asymptotic):
            arcs.add(Central(a.at))
        elif isinstance(a, Peripheral):
            arcs.add(a)
        else:
            raise InvalidTriangulation(f"{a} has no counterpart in a punctured disc")
    return PuncturedDisc(T.n, frozenset(arcs))


# -- the cover as a strip --------------------------------------------------------------


def unroll(T: AnnulusTriangulation, copies: int = 3, winding_bound: int = DEFAULT_WINDING_BOUND):
    """Finite window of the lifted triangulation as a strip triangulation.

    Lower points ``0 .. copies*n`` are kept; the reliable core is the
    interior copies ``n .. (copies-1)*n``.  Asymptotic arcs at the outer
    boundary are replaced by bridging arcs to one upper point, which leaves
    every triangle at a lower point in place; inner structure is dropped in
    that case since it touches no lower point.
    """
    from .strip import StripArc, StripTriangulation

    _require_valid(T, winding_bound)
    if copies < 3:
        raise ValueError("need at least three copies to have an interior one")
    n, m = T.n, T.m
    lo, hi = 0, copies * n
    arcs = []
    if T.is_asymptotic:
        upper = (Fraction(0),)
        for l in T.lifts():
            for t in range(-1, copies + 2):
                tl = _translate(l, t, n, m)
                if tl[0] == "L" and lo <= tl[1] and tl[2] <= hi:
                    arcs.append(StripArc("lower", tl[1], tl[2]))
                elif tl[0] == "AL" and lo <= tl[1] <= hi:
                    arcs.append(StripArc("bridging", tl[1], upper[0]))
    else:
        w = max((abs(a.winding) for a in T.arcs if isinstance(a, Bridging)), default=0)
        ylo, yhi = -(w + 2) * m, (copies + w + 2) * m
        upper = tuple(Fraction(y) for y in range(ylo, yhi + 1))
        span = w + 3
        for l in T.lifts():
            for t in range(-span, copies + span + 1):
                tl = _translate(l, t, n, m)
                if tl[0] == "L" and lo <= tl[1] and tl[2] <= hi:
                    arcs.append(StripArc("lower", tl[1], tl[2]))
                elif tl[0] == "U" and ylo <= tl[1] and tl[2] <= yhi:
                    arcs.append(StripArc("upper", Fraction(tl[1]), Fraction(tl[2])))
                elif tl[0] == "B" and lo <= tl[1] <= hi and ylo <= tl[2] <= yhi:
                    arcs.append(StripArc("bridging", tl[1], Fraction(tl[2])))
    q = outer_quiddity(T, validate=False)
    return StripTriangulation(
        lower=(lo, hi),
        upper=tuple(upper),
        arcs=tuple(sorted(set(arcs))),
        core=(n, (copies - 1) * n),
        source=QuiddityRow.periodic(q),
    )
