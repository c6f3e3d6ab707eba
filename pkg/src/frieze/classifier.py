"""Decide whether a periodic quiddity sequence gives a finite frieze, an
infinite frieze, or no frieze at all.

The decision runs the ear-removal reduction: while the shortest period is at
least 3 and some entry is 1, drop that entry and decrement its two cyclic
neighbours.  Every step is recorded so that witnesses (a triangulated polygon
or, in :mod:`frieze.annulus`, a triangulated annulus) can be rebuilt by
replaying the steps backwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import QuiddityRow, fragment, shortest_period

FINITE = "finite"
INFINITE = "infinite"
NOT_A_FRIEZE = "not_a_frieze"


class ClassificationError(ValueError):
    """Raised when an operation needs a different frieze class than it got."""


@dataclass(frozen=True)
class ReductionStep:
    """One ear removal.

    ``before`` is the (already normalized) sequence the step acts on, ``removed``
    the index of the removed 1.  ``reduced`` lists the survivors cyclically
    starting right after ``removed``, so ``before`` rotated to start at
    ``removed + 1`` equals ``reduced`` with a 1 appended and its first and last
    entries incremented.  ``normalized`` is ``reduced[:r]`` for its shortest
    period ``r``, and ``multiplicity = len(reduced) // r``.
    """

    before: tuple[int, ...]
    removed: int
    reduced: tuple[int, ...]
    normalized: tuple[int, ...]
    multiplicity: int

    @property
    def note(self) -> str:
        if self.multiplicity == 1:
            return ""
        return f"shortest period shrank to {len(self.normalized)} (x{self.multiplicity})"


@dataclass(frozen=True)
class ReductionTrace:
    start: tuple[int, ...]
    steps: tuple[ReductionStep, ...]
    base: tuple[int, ...]

    def sequences(self) -> list[tuple[int, ...]]:
        return [self.start] + [s.normalized for s in self.steps]


@dataclass(frozen=True)
class TriangulatedPolygon:
    """Triangulated ``n``-gon with vertices ``1..n`` and chords ``(u, v)``, ``u < v``."""

    n: int
    diagonals: tuple[tuple[int, int], ...]

    def quiddity(self) -> tuple[int, ...]:
        counts = [1] * (self.n + 1)
        for u, v in self.diagonals:
            counts[u] += 1
            counts[v] += 1
        return tuple(counts[1:])

    def problems(self) -> list[str]:
        out = []
        if self.n < 3:
            out.append(f"polygon needs at least 3 vertices, got {self.n}")
        if len(self.diagonals) != max(self.n - 3, 0):
            out.append(f"expected {self.n - 3} diagonals, got {len(self.diagonals)}")
        if len(set(self.diagonals)) != len(self.diagonals):
            out.append("repeated diagonal")
        for u, v in self.diagonals:
            if not (1 <= u < v <= self.n) or v - u < 2 or (u == 1 and v == self.n):
                out.append(f"({u}, {v}) is not a diagonal")
        for a, (u, v) in enumerate(self.diagonals):
            for x, y in self.diagonals[a + 1:]:
                if u < x < v < y or x < u < y < v:
                    out.append(f"diagonals ({u}, {v}) and ({x}, {y}) cross")
        return out

    def rotated(self, shift: int) -> "TriangulatedPolygon":
        def r(v):
            return (v - 1 + shift) % self.n + 1

        diags = tuple(sorted(tuple(sorted((r(u), r(v)))) for u, v in self.diagonals))
        return TriangulatedPolygon(self.n, diags)


@dataclass(frozen=True)
class Classification:
    outcome: str
    entries: tuple[int, ...]
    shortest_period: int
    trace: ReductionTrace
    polygon_order: int | None = None
    minimal_inner_points: int | None = None
    witness: tuple[int, int] | None = None
    polygon: TriangulatedPolygon | None = field(default=None, compare=False)
    reason: str = ""

    @property
    def is_finite(self) -> bool:
        return self.outcome == FINITE

    @property
    def is_infinite(self) -> bool:
        return self.outcome == INFINITE

    def to_dict(self) -> dict:
        d = {
            "outcome": self.outcome,
            "entries": list(self.entries),
            "shortest_period": self.shortest_period,
            "trace": [
                {
                    "before": list(s.before),
                    "removed": s.removed,
                    "after": list(s.normalized),
                    "multiplicity": s.multiplicity,
                }
                for s in self.trace.steps
            ],
            "base": list(self.trace.base),
        }
        if self.polygon_order is not None:
            d["polygon_order"] = self.polygon_order
        if self.minimal_inner_points is not None:
            d["minimal_inner_points"] = self.minimal_inner_points
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.reason:
            d["reason"] = self.reason
        return d


def normalize(entries: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Shortest-period prefix of ``entries`` and how many times it repeats."""
    entries = tuple(entries)
    r = shortest_period(entries)
    return entries[:r], len(entries) // r


def reduce_at(entries: Sequence[int], k: int) -> tuple[int, ...]:
    """Drop ``entries[k]`` (a 1) and decrement its neighbours.

    The survivors are listed cyclically from ``k + 1``.
    """
    n = len(entries)
    if n < 3:
        raise ValueError("reduction needs at least 3 entries")
    if entries[k] != 1:
        raise ValueError(f"entry {k} is {entries[k]}, not 1")
    out = [entries[(k + 1 + t) % n] for t in range(n - 1)]
    out[0] -= 1
    out[-1] -= 1
    return tuple(out)


def _adjacent_ones(entries: Sequence[int]) -> int | None:
    n = len(entries)
    for i in range(n):
        if entries[i] == 1 and entries[(i + 1) % n] == 1:
            return i
    return None


def _base_outcome(base: tuple[int, ...]) -> tuple[str, int | None, str]:
    """Outcome of a stopping sequence plus polygon order (finite case)."""
    r = len(base)
    if r == 1:
        return (FINITE, 3, "") if base[0] == 1 else (INFINITE, None, "")
    if min(base) >= 2:
        return INFINITE, None, ""
    if r == 2:
        a = max(base)
        if a == 2:
            return FINITE, 4, ""
        if a == 3:
            return FINITE, 6, ""
        return INFINITE, None, ""
    pos = _adjacent_ones(base)
    return NOT_A_FRIEZE, None, f"cyclically adjacent 1s at positions {pos}, {(pos + 1) % r}"


def _reduce_fully(entries: tuple[int, ...]) -> tuple[ReductionTrace, str, int | None, str]:
    current, _ = normalize(entries)
    steps = []
    while True:
        if len(current) >= 3 and 1 in current and _adjacent_ones(current) is None:
            k = max(i for i, a in enumerate(current) if a == 1)
            reduced = reduce_at(current, k)
            normalized, mult = normalize(reduced)
            steps.append(ReductionStep(current, k, reduced, normalized, mult))
            current = normalized
            continue
        break
    outcome, order, reason = _base_outcome(current)
    if outcome == FINITE:
        # Replay: each step inserts one ear per copy of the pre-step sequence,
        # which only works if the polygon order is divisible accordingly.
        for step in reversed(steps):
            length = len(step.reduced)
            if order % length:
                outcome, order = NOT_A_FRIEZE, None
                reason = (f"reduced sequence {step.reduced} has polygon order not divisible "
                          f"by its length {length}")
                break
            order = order // length * len(step.before)
    trace = ReductionTrace(tuple(entries), tuple(steps), current)
    return trace, outcome, order, reason


def _nonpositive_witness(entries: tuple[int, ...], max_depth: int) -> tuple[int, int] | None:
    q = QuiddityRow.periodic(entries)
    f = fragment(q, range(len(entries)), max_depth)
    for d in range(0, max_depth + 1):
        for i in range(len(entries)):
            if f[i, i + d] <= 0:
                return (i, i + d)
    return None


def _base_inner_points(base: tuple[int, ...]) -> int:
    if len(base) == 2 and 1 in base:
        return max(base) - 4
    return sum(b - 2 for b in base)


def classify(entries: Sequence[int]) -> Classification:
    entries = tuple(entries)
    if not entries:
        raise ValueError("cannot classify an empty sequence")
    if any((not isinstance(a, int)) or a < 1 for a in entries):
        raise ValueError("entries must be positive integers")
    r = shortest_period(entries)
    trace, outcome, order, reason = _reduce_fully(entries)
    if outcome == FINITE:
        n_orig = r
        # order was computed for the shortest period; the row is the same
        assert order % n_orig == 0
        return Classification(FINITE, entries, r, trace, polygon_order=order,
                              polygon=_realize_polygon(entries, order))
    if outcome == INFINITE:
        m = _base_inner_points(trace.base)
        for step in trace.steps:
            m *= step.multiplicity
        # an annulus with len(entries) outer points covers the minimal one
        m *= len(entries) // r
        return Classification(INFINITE, entries, r, trace, minimal_inner_points=m)
    witness = _nonpositive_witness(entries[:r], len(entries[:r]) + 2)
    return Classification(NOT_A_FRIEZE, entries, r, trace, witness=witness, reason=reason)


def minimal_inner_points(entries: Sequence[int]) -> int:
    """Fewest inner marked points of an annulus with ``len(entries)`` outer
    points whose outer quiddity is ``entries``.

    Computed from the reduction base: ``b_1 - 2`` for a single entry,
    ``b - 4`` for ``(1, b)``, and the sum of ``b_i - 2`` otherwise; steps whose
    result has a smaller period multiply the count back up, and so does
    ``entries`` itself repeating its shortest period.
    """
    c = classify(entries)
    if not c.is_infinite:
        raise ClassificationError(f"{tuple(entries)} is {c.outcome}, not an infinite frieze")
    return c.minimal_inner_points


def polygon_order(entries: Sequence[int], cap: int | None = None) -> int:
    """Number of polygon vertices of a finite frieze, read off the frieze rows."""
    c = classify(entries)
    if not c.is_finite:
        raise ClassificationError(f"{tuple(entries)} is {c.outcome}, not a finite frieze")
    entries = tuple(entries)
    n = len(entries)
    cap = cap if cap is not None else 64 * n
    q = QuiddityRow.periodic(entries)
    f = fragment(q, range(n), cap)
    for order in range(3, cap + 3):
        ones, zeros = f.row(order - 3), f.row(order - 2)
        if all(v == 1 for v in ones) and all(v == 0 for v in zeros):
            if order % c.shortest_period:
                raise ClassificationError(f"order {order} not a multiple of the period")
            return order
    raise ClassificationError(f"no closing rows within {cap} rows; classifier inconsistency")


def _realize_polygon(entries: tuple[int, ...], order: int) -> TriangulatedPolygon:
    n = len(entries)
    labels = list(range(1, order + 1))
    values = [entries[(v - 1) % n] for v in labels]
    diagonals = []
    while len(labels) > 3:
        size = len(labels)
        try:
            t = values.index(1)
        except ValueError:
            raise ClassificationError(f"no ear left in {values}") from None
        left, right = (t - 1) % size, (t + 1) % size
        if values[left] < 2 or values[right] < 2:
            raise ClassificationError(f"ear at {labels[t]} has a neighbour of value 1")
        diagonals.append(tuple(sorted((labels[left], labels[right]))))
        values[left] -= 1
        values[right] -= 1
        del labels[t], values[t]
    if values != [1, 1, 1]:
        raise ClassificationError(f"reduction ended at {values}, not a triangle")
    return TriangulatedPolygon(order, tuple(sorted(diagonals)))


def realize_polygon(entries: Sequence[int]) -> TriangulatedPolygon:
    """Polygon triangulation whose vertex quiddity is ``entries`` repeated.

    Ears are cut from the full ``N``-tuple down to a triangle; each cut
    records the chord between the ear's neighbours.
    """
    c = classify(entries)
    if not c.is_finite:
        raise ClassificationError(f"{tuple(entries)} is {c.outcome}, not a finite frieze")
    return c.polygon
