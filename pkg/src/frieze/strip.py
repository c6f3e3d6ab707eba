"""Triangulations of the infinite strip and realization of windowed rows.

A strip has integer lower marked points and upper marked points at rational
positions (only their order matters).  Rows are realized by peeling: every
round removes all current 1s at once, records the arcs that cut off those
ears, and decrements the neighbours.  What survives has every value >= 2
and is completed with bridging arcs to fresh upper points.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import QuiddityRow

PEEL_CAP_ENV = "FRIEZE_PEEL_CAP"
DEFAULT_MARGIN = 4


class StripError(ValueError):
    pass


class AdjacentOnes(StripError):
    """Two neighbouring survivors both reached 1, or a survivor dropped to 0."""

    def __init__(self, position, values=None):
        super().__init__(f"no triangulation: adjacent 1s (or a 0) at lower point {position}")
        self.position = position
        self.values = values


class RoundLimitExceeded(StripError):
    def __init__(self, cap):
        super().__init__(f"peeling did not terminate within {cap} rounds")
        self.cap = cap


@dataclass(frozen=True, order=True)
class StripArc:
    """``lower`` arcs join lower points ``a < b``, ``upper`` arcs upper points,
    ``bridging`` arcs lower point ``a`` to upper point ``b``."""

    kind: str
    a: object
    b: object


@dataclass(frozen=True)
class PeelingState:
    round: int
    removed: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]
    survivors: tuple[int, ...]
    values: tuple[int, ...]


@dataclass(frozen=True)
class StripTriangulation:
    lower: tuple[int, int]
    upper: tuple[Fraction, ...]
    arcs: tuple[StripArc, ...]
    core: tuple[int, int]
    spill: int = 0
    rounds: tuple[PeelingState, ...] = ()
    source: QuiddityRow | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def lower_points(self) -> range:
        return range(self.lower[0], self.lower[1] + 1)

    def edges(self) -> set:
        out = set()
        for x in range(self.lower[0], self.lower[1]):
            out.add((("L", x), ("L", x + 1)))
        ups = sorted(self.upper)
        for u, v in zip(ups, ups[1:]):
            out.add((("U", u), ("U", v)))
        for arc in self.arcs:
            if arc.kind == "lower":
                out.add((("L", arc.a), ("L", arc.b)))
            elif arc.kind == "upper":
                out.add((("U", arc.a), ("U", arc.b)))
            else:
                out.add((("L", arc.a), ("U", arc.b)))
        return out

    def triangles(self) -> list[tuple]:
        """All 3-cliques of the arc-and-boundary graph.

        In a strip triangulation with no interior vertices these are exactly
        the triangles.
        """
        if "triangles" not in self._cache:
            adj: dict = {}
            for u, v in self.edges():
                adj.setdefault(u, set()).add(v)
                adj.setdefault(v, set()).add(u)
            tris = set()
            for u in adj:
                for v, w in combinations(sorted(adj[u], key=_vkey), 2):
                    if w in adj[v]:
                        tris.add(tuple(sorted((u, v, w), key=_vkey)))
            self._cache["triangles"] = sorted(tris, key=lambda t: tuple(map(_vkey, t)))
        return self._cache["triangles"]

    def triangles_at(self, x: int) -> list[tuple]:
        key = ("at", x)
        if key not in self._cache:
            self._cache[key] = [t for t in self.triangles() if ("L", x) in t]
        return self._cache[key]


def _vkey(v):
    return (0 if v[0] == "L" else 1, v[1])


class OutsideCore(StripError):
    pass


def _require_core(T: StripTriangulation, i: int, j: int):
    if not (T.core[0] <= i and j <= T.core[1]):
        raise OutsideCore(f"range {i}..{j} leaves the core {T.core[0]}..{T.core[1]}")


def strip_quiddity(T: StripTriangulation, i_range=None) -> tuple[int, ...]:
    """Triangle counts at the lower points in ``i_range`` (default: the core)."""
    if i_range is None:
        i_range = range(T.core[0], T.core[1] + 1)
    i_range = list(i_range)
    if i_range:
        _require_core(T, min(i_range), max(i_range))
    return tuple(len(T.triangles_at(x)) for x in i_range)


def triangles_in_range(T: StripTriangulation, i: int, j: int) -> list[tuple[tuple, frozenset]]:
    """Triangles meeting a lower point of ``i..j``, each with the set of its
    lower corners inside that range."""
    _require_core(T, i, j)
    seen = {}
    for x in range(i, j + 1):
        for tri in T.triangles_at(x):
            seen[tri] = frozenset(v[1] for v in tri if v[0] == "L" and i <= v[1] <= j)
    return sorted(seen.items(), key=lambda it: tuple(map(_vkey, it[0])))


def core_row(T: StripTriangulation) -> QuiddityRow:
    return QuiddityRow.windowed(strip_quiddity(T), lo=T.core[0])


def check_strip(T: StripTriangulation) -> list[str]:
    """Endpoint and crossing problems (an empty list means none)."""
    out = []
    lo, hi = T.lower
    ups = set(T.upper)
    for arc in T.arcs:
        if arc.kind == "lower":
            if not (lo <= arc.a < arc.b <= hi) or arc.b - arc.a < 2:
                out.append(f"bad lower arc {arc}")
        elif arc.kind == "upper":
            if arc.a not in ups or arc.b not in ups or arc.a >= arc.b:
                out.append(f"bad upper arc {arc}")
        elif arc.kind == "bridging":
            if not lo <= arc.a <= hi or arc.b not in ups:
                out.append(f"bad bridging arc {arc}")
        else:
            out.append(f"unknown arc kind {arc.kind}")
    for p, q in combinations(T.arcs, 2):
        if _strip_cross(p, q):
            out.append(f"{p} crosses {q}")
    return out


def _strip_cross(p: StripArc, q: StripArc) -> bool:
    if p.kind == q.kind and p.kind in ("lower", "upper"):
        return p.a < q.a < p.b < q.b or q.a < p.a < q.b < p.b
    if p.kind == q.kind == "bridging":
        return (p.a - q.a) * (p.b - q.b) < 0
    if p.kind == "bridging":
        p, q = q, p
    if q.kind != "bridging":
        return False
    if p.kind == "lower":
        return p.a < q.a < p.b
    return p.a < q.b < p.b


def _peel_cap(length: int, cap: int | None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get(PEEL_CAP_ENV)
    if env:
        return int(env)
    return 10 * length + 100


def realize_strip(q: QuiddityRow, margin: int = DEFAULT_MARGIN, peel_cap: int | None = None) -> StripTriangulation:
    """Strip triangulation whose lower quiddity agrees with ``q`` on its core.

    For a windowed ``q`` the stored lower window is the window padded by
    ``margin`` background entries on each side (more if peeling spills
    outwards).  A periodic ``q`` is peeled cyclically on one period and the
    result is laid out over several periods (at least three, and at least a
    dozen lower points), all but the outer two forming the core.
    """
    if q.is_periodic:
        return _realize_periodic(q)
    lo, hi = q.lo, q.hi
    L, H = lo - margin, hi + margin
    values = {x: q[x] for x in range(L, H + 1)}
    survivors = list(range(L, H + 1))
    cap = _peel_cap(H - L + 1, peel_cap)
    arcs = []
    rounds = []
    removed_all = []
    r = 0
    while True:
        ones = [t for t, x in enumerate(survivors) if values[x] == 1]
        if not ones:
            break
        if ones[0] == 0 or ones[-1] == len(survivors) - 1:
            # a 1 reached the padding: pad further
            grow = max(margin, 1)
            if ones[0] == 0:
                new = list(range(L - grow, L))
                for x in new:
                    values[x] = q[x]
                survivors = new + survivors
                L -= grow
            if ones[-1] == len(survivors) - 1:
                new = list(range(H + 1, H + grow + 1))
                for x in new:
                    values[x] = q[x]
                survivors = survivors + new
                H += grow
            if H - L > 10 * cap:
                raise RoundLimitExceeded(cap)
            continue
        r += 1
        if r > cap:
            raise RoundLimitExceeded(cap)
        for a, b in zip(ones, ones[1:]):
            if b == a + 1:
                raise AdjacentOnes(survivors[a], dict(values))
        round_arcs = []
        for t in ones:
            left, right = survivors[t - 1], survivors[t + 1]
            round_arcs.append((left, right))
            values[left] -= 1
            values[right] -= 1
        removed = tuple(survivors[t] for t in ones)
        gone = set(removed)
        survivors = [x for x in survivors if x not in gone]
        for x in survivors:
            if values[x] < 1:
                raise AdjacentOnes(x, dict(values))
        arcs.extend(round_arcs)
        removed_all.extend(removed)
        rounds.append(PeelingState(r, removed, tuple(round_arcs), tuple(survivors),
                                   tuple(values[x] for x in survivors)))
    spill = 0
    if removed_all:
        spill = max(lo - min(removed_all), max(removed_all) - hi, 0)

    upper: list[Fraction] = []
    groups = {}
    for s in survivors:
        c = values[s]
        groups[s] = [s + Fraction(k, c - 1) for k in range(1, c - 1)]
        upper.extend(groups[s])
    upper.append(Fraction(H + 1))
    upper.sort()
    out = [StripArc("lower", a, b) for a, b in arcs]
    for s in survivors:
        own = groups[s]
        for p in own:
            out.append(StripArc("bridging", s, p))
        nxt = min(p for p in upper if p > s and p not in own)
        out.append(StripArc("bridging", s, nxt))
    return StripTriangulation(
        lower=(L, H),
        upper=tuple(upper),
        arcs=tuple(sorted(out, key=_arc_key)),
        core=(L + 1 + spill, H - 1 - spill),
        spill=spill,
        rounds=tuple(rounds),
        source=q,
    )


def _arc_key(arc: StripArc):
    return ({"lower": 0, "bridging": 1, "upper": 2}[arc.kind], arc.a, arc.b)


def _realize_periodic(q: QuiddityRow, copies: int | None = None) -> StripTriangulation:
    n = q.period
    if copies is None:
        copies = 2 + max(1, -(-12 // n))
    values = {x: q[x] for x in range(n)}
    survivors = list(range(n))
    arcs = []
    rounds = []
    r = 0
    while True:
        ones = [t for t, x in enumerate(survivors) if values[x] == 1]
        if not ones:
            break
        size = len(survivors)
        if size == 1:
            # the lone survivor neighbours its own translates
            raise AdjacentOnes(survivors[0], dict(values))
        r += 1
        for a, b in zip(ones, ones[1:] + [ones[0] + size]):
            if b == a + 1:
                raise AdjacentOnes(survivors[a], dict(values))
        round_arcs = []
        for t in ones:
            left = survivors[t - 1] - (n if t == 0 else 0)
            right = survivors[(t + 1) % size] + (n if t == size - 1 else 0)
            round_arcs.append((left, right))
            values[left % n] -= 1
            values[right % n] -= 1
        removed = tuple(survivors[t] for t in ones)
        survivors = [x for x in survivors if x not in set(removed)]
        for x in survivors:
            if values[x] < 1:
                raise AdjacentOnes(x, dict(values))
        arcs.extend(round_arcs)
        rounds.append(PeelingState(r, removed, tuple(round_arcs), tuple(survivors),
                                   tuple(values[x] for x in survivors)))
    lo, hi = 0, copies * n
    out = set()
    for a, b in arcs:
        for t in range(-1, copies + 1):
            if lo <= a + t * n and b + t * n <= hi:
                out.add(StripArc("lower", a + t * n, b + t * n))
    if all(values[x] == 2 for x in survivors):
        # a single upper point serves every survivor
        top = Fraction(hi + 1)
        upper = [top]
        for x in survivors:
            for t in range(copies + 1):
                if lo <= x + t * n <= hi:
                    out.add(StripArc("bridging", x + t * n, top))
    else:
        period_points = []
        own = {}
        for x in survivors:
            own[x] = [x + Fraction(k, values[x] - 1) for k in range(1, values[x] - 1)]
            period_points.extend(own[x])
        upper = sorted(p + t * n for p in period_points for t in range(-1, copies + 2))
        for x in survivors:
            nxt = next(p for p in sorted(period_points) + [p + n for p in sorted(period_points)]
                       if p > x and p not in own[x])
            ends = own[x] + [nxt]
            for t in range(-1, copies + 1):
                if lo <= x + t * n <= hi:
                    for p in ends:
                        out.add(StripArc("bridging", x + t * n, p + t * n))
    return StripTriangulation(
        lower=(lo, hi),
        upper=tuple(upper),
        arcs=tuple(sorted(out, key=_arc_key)),
        core=(n, (copies - 1) * n),
        rounds=tuple(rounds),
        source=q,
    )
