"""Counting matchings between lower marked points and triangles.

A matching for ``i..j`` assigns to every lower point in that range one of
the triangles at it, with no triangle used twice.  Their number equals the
frieze entry ``m_ij`` of the triangulation's quiddity row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .core import QuiddityRow, entry_recurrence
from .strip import OutsideCore, StripTriangulation, strip_quiddity, triangles_in_range


def _as_strip(T, i: int, j: int):
    from .annulus import AnnulusTriangulation, unroll

    if isinstance(T, AnnulusTriangulation):
        # move i into the first domain, then unroll enough copies that
        # i..j sits inside the core (which starts one domain in)
        i0 = i % T.n
        j0 = j - (i - i0)
        copies = 3 + -(-max(j0, 0) // T.n)
        S = unroll(T, copies=copies)
        return S, i0 + T.n, j0 + T.n
    return T, i, j


def _check_range(S: StripTriangulation, i: int, j: int):
    lo, hi = S.core
    if not (lo <= i and j <= hi):
        raise OutsideCore(f"range {i}..{j} leaves the core {lo}..{hi} of the window")


def count_matchings(T, i: int, j: int) -> int:
    """Number of matchings for lower points ``i..j`` (0 if ``j == i - 2``,
    1 if ``j == i - 1``).

    Triangles are processed one at a time while tracking which points are
    already matched, so the cost is ``2**(j - i + 1)`` times the number of
    triangles involved.
    """
    if j == i - 2:
        return 0
    if j == i - 1:
        return 1
    if j < i - 2:
        raise ValueError("j must be >= i - 2")
    S, i, j = _as_strip(T, i, j)
    _check_range(S, i, j)
    full = (1 << (j - i + 1)) - 1
    dp = {0: 1}
    for _, corners in triangles_in_range(S, i, j):
        bits = [1 << (v - i) for v in sorted(corners)]
        nxt = dict(dp)
        for mask, ways in dp.items():
            for b in bits:
                if not mask & b:
                    nxt[mask | b] = nxt.get(mask | b, 0) + ways
        dp = nxt
    return dp.get(full, 0)


def count_matchings_naive(T, i: int, j: int) -> int:
    """Backtracking enumeration; slow, used as an oracle."""
    if j == i - 2:
        return 0
    if j == i - 1:
        return 1
    S, i, j = _as_strip(T, i, j)
    _check_range(S, i, j)
    options = [S.triangles_at(x) for x in range(i, j + 1)]
    used = set()

    def go(k):
        if k == len(options):
            return 1
        total = 0
        for t in options[k]:
            if t not in used:
                used.add(t)
                total += go(k + 1)
                used.discard(t)
        return total

    return go(0)


class NotApplicable(ValueError):
    """The recurrence's derivation needs a range free of lower peripheral arcs."""


def lower_arcs_meeting(S: StripTriangulation, i: int, j: int) -> list:
    return [a for a in S.arcs if a.kind == "lower" and a.a <= j and a.b >= i]


def count_by_recurrence(T, i: int, j: int) -> int:
    """``|M(i, j)|`` from the expansion over the triangle matched to ``i``:

    ``M(s, e) = (a_s - 1) M(s+1, e) + sum_{s<k<e} (a_k - 2) M(k+1, e) + a_e - 1``
    with ``M(s, s) = a_s`` and ``M(e+1, e) = 1``.

    ``T`` is a strip or annulus triangulation (no lower peripheral arc may
    meet ``i..j``), or a bare :class:`QuiddityRow`.
    """
    if j == i - 2:
        return 0
    if j == i - 1:
        return 1
    if j < i - 2:
        raise ValueError("j must be >= i - 2")
    if isinstance(T, QuiddityRow):
        q = T
    else:
        S, i2, j2 = _as_strip(T, i, j)
        _check_range(S, i2, j2)
        blocking = lower_arcs_meeting(S, i2, j2)
        if blocking:
            raise NotApplicable(f"lower peripheral arc {blocking[0].a}-{blocking[0].b} meets {i}..{j}")
        q = QuiddityRow.windowed(strip_quiddity(S, range(i2, j2 + 1)), lo=i)
    e = j

    @lru_cache(maxsize=None)
    def M(start):
        if start == e + 1:
            return 1
        if start == e:
            return q[e]
        total = (q[start] - 1) * M(start + 1)
        for k in range(start + 1, e):
            total += (q[k] - 2) * M(k + 1)
        return total + q[e] - 1

    return M(i)


@dataclass
class MatchingReport:
    ok: bool
    checked: int
    mismatches: list[tuple[int, int, int, int]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_matching_theorem(T, depth: int = 6, i_range=None) -> MatchingReport:
    """Compare matching counts with frieze entries for ``j - i <= depth``.

    For an annulus the lower points ``0..n-1`` (one fundamental domain) are
    used by default, counted in a window unrolled from the cover.  For a
    strip, every point of the core that leaves room for ``depth``.
    """
    from .annulus import AnnulusTriangulation, outer_quiddity

    mismatches = []
    checked = 0
    if isinstance(T, AnnulusTriangulation):
        q = QuiddityRow.periodic(outer_quiddity(T))
        pts = list(i_range if i_range is not None else range(T.n))
        S, _, _ = _as_strip(T, 0, T.n - 1 + depth)
        shift = S.core[0]
        for i in pts:
            for d in range(0, depth + 1):
                j = i + d
                i0 = i % T.n
                got = count_matchings(S, i0 + shift, i0 + d + shift)
                want = entry_recurrence(q, i, j)
                checked += 1
                if got != want:
                    mismatches.append((i, j, got, want))
        return MatchingReport(not mismatches, checked, mismatches)
    lo, hi = T.core
    q = QuiddityRow.windowed(strip_quiddity(T), lo=lo)
    pts = list(i_range if i_range is not None else range(lo, hi + 1))
    for i in pts:
        for d in range(0, depth + 1):
            j = i + d
            if j > hi:
                break
            got = count_matchings(T, i, j)
            want = entry_recurrence(q, i, j)
            checked += 1
            if got != want:
                mismatches.append((i, j, got, want))
    return MatchingReport(not mismatches, checked, mismatches)
