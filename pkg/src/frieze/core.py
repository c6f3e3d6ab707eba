"""Exact frieze lattices generated from quiddity rows.

Entries are indexed ``m[i, j]`` with ``j >= i - 2``; the two trivial rows are
``m[i, i-2] = 0`` and ``m[i, i-1] = 1`` and the quiddity row is ``m[i, i]``.
All arithmetic is on Python ints, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class QuiddityRow:
    """A total integer row ``a_i`` for ``i`` in Z.

    The row is a periodic background pattern, optionally overridden on a
    finite window ``lo .. lo + len(window) - 1``.  ``QuiddityRow.periodic``
    has no window; ``QuiddityRow.windowed`` uses the constant background 2.
    """

    background: tuple[int, ...] = (2,)
    window: tuple[int, ...] = ()
    lo: int = 0

    def __post_init__(self):
        if not self.background:
            raise ValueError("background period must be nonempty")
        for a in self.background + self.window:
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"quiddity entries must be positive integers, got {a!r}")

    @classmethod
    def periodic(cls, entries: Iterable[int]) -> "QuiddityRow":
        return cls(background=tuple(entries))

    @classmethod
    def windowed(cls, entries: Iterable[int], lo: int = 0, background: Iterable[int] = (2,)) -> "QuiddityRow":
        entries = tuple(entries)
        if not entries:
            raise ValueError("window must be nonempty")
        return cls(background=tuple(background), window=entries, lo=lo)

    @property
    def is_periodic(self) -> bool:
        return not self.window

    @property
    def period(self) -> int:
        return len(self.background)

    @property
    def hi(self) -> int:
        return self.lo + len(self.window) - 1

    def __getitem__(self, i: int) -> int:
        if self.window and self.lo <= i <= self.hi:
            return self.window[i - self.lo]
        return self.background[i % len(self.background)]

    def values(self, i: int, j: int) -> list[int]:
        return [self[k] for k in range(i, j + 1)]

    def replace(self, k: int, value: int) -> "QuiddityRow":
        """Row with ``a_k`` set to ``value``; the window grows to cover ``k``."""
        if self.window:
            lo, hi = min(self.lo, k), max(self.hi, k)
        else:
            lo = hi = k
        entries = [self[t] for t in range(lo, hi + 1)]
        entries[k - lo] = value
        return QuiddityRow(background=self.background, window=tuple(entries), lo=lo)


def entry_recurrence(q: QuiddityRow, i: int, j: int) -> int:
    """``m_ij`` by the forward recurrence ``m_ij = a_j m_{i,j-1} - m_{i,j-2}``."""
    if j < i - 2:
        raise ValueError(f"entry ({i}, {j}) lies above the frieze")
    prev, cur = 0, 1  # m_{i,i-2}, m_{i,i-1}
    if j == i - 2:
        return prev
    for t in range(i, j + 1):
        prev, cur = cur, q[t] * cur - prev
    return cur


def entry_continuant(q: QuiddityRow, i: int, j: int) -> int:
    """Tridiagonal determinant with diagonal ``a_i..a_j`` and unit off-diagonals.

    Expands along the first row, i.e. runs the continuant recurrence from the
    bottom-right corner upwards; this is the i-direction counterpart of
    :func:`entry_recurrence` and is kept independent of it.
    """
    if j < i:
        raise ValueError("continuant needs j >= i")
    below, cur = 1, q[j]  # det of the empty and the 1x1 trailing block
    for t in range(j - 1, i - 1, -1):
        below, cur = cur, q[t] * cur - below
    return cur


@dataclass(frozen=True)
class FriezeFragment:
    """Rectangular slab of a frieze: rows ``d = j - i`` in ``-2..d_max``."""

    i_min: int
    i_max: int
    d_max: int
    rows: tuple[tuple[int, ...], ...]
    source: QuiddityRow | None = field(default=None, compare=False)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        d = j - i
        if not (self.i_min <= i <= self.i_max and -2 <= d <= self.d_max):
            raise KeyError(ij)
        return self.rows[d + 2][i - self.i_min]

    def __contains__(self, ij) -> bool:
        i, j = ij
        return self.i_min <= i <= self.i_max and -2 <= j - i <= self.d_max

    def row(self, d: int) -> tuple[int, ...]:
        return self.rows[d + 2]

    def bumped(self, i: int, j: int, delta: int = 1) -> "FriezeFragment":
        """Copy with one stored entry changed; used to exercise the verifier."""
        d = j - i
        rows = [list(r) for r in self.rows]
        rows[d + 2][i - self.i_min] += delta
        return FriezeFragment(self.i_min, self.i_max, self.d_max, tuple(map(tuple, rows)), self.source)


def fragment(q: QuiddityRow, i_range: Sequence[int] | range, d_max: int) -> FriezeFragment:
    """Tabulate ``m_ij`` for ``i`` in ``i_range`` and ``-2 <= j - i <= d_max``."""
    if d_max < -2:
        raise ValueError("d_max must be >= -2")
    i_values = list(i_range)
    if not i_values:
        raise ValueError("empty row range")
    i_min, i_max = min(i_values), max(i_values)
    columns = []
    for i in range(i_min, i_max + 1):
        col = [0, 1]
        for d in range(0, d_max + 1):
            col.append(q[i + d] * col[-1] - col[-2])
        columns.append(col[: d_max + 3])
    rows = tuple(tuple(col[r] for col in columns) for r in range(d_max + 3))
    return FriezeFragment(i_min, i_max, d_max, rows, q)


@dataclass
class UnimodularReport:
    ok: bool
    failures: list[tuple[int, int]]
    boundary_failures: list[tuple[int, int]]

    def __bool__(self) -> bool:
        return self.ok


def verify_unimodular(f: FriezeFragment) -> UnimodularReport:
    """Check the boundary rows and every diamond fully stored in ``f``.

    A diamond is named by its left corner ``(i, j)``; it involves ``m_ij``,
    ``m_{i+1,j+1}``, ``m_{i+1,j}`` and ``m_{i,j+1}``.
    """
    boundary = []
    for i in range(f.i_min, f.i_max + 1):
        if f[i, i - 2] != 0:
            boundary.append((i, i - 2))
        if f.d_max >= -1 and f[i, i - 1] != 1:
            boundary.append((i, i - 1))
    failures = []
    for i in range(f.i_min, f.i_max):
        for d in range(-2, f.d_max):
            j = i + d
            if d + 1 > f.d_max:
                continue
            # m_{i+1,j} has depth d - 1; skip diamonds poking above row -2
            if d - 1 < -2:
                continue
            det = f[i, j] * f[i + 1, j + 1] - f[i + 1, j] * f[i, j + 1]
            if det != 1:
                failures.append((i, j))
    return UnimodularReport(not failures and not boundary, failures, boundary)


def verify_ptolemy(q: QuiddityRow, i: int, j: int, k: int) -> bool:
    """``m_ij == m_{i,k-1} m_kj - m_{i,k-2} m_{k+1,j}`` for ``i <= k <= j+1``."""
    if not i <= k <= j + 1:
        raise ValueError(f"need i <= k <= j+1, got i={i}, j={j}, k={k}")

    def m(a, b):
        # entries strictly above the zero row are extended by zero
        return 0 if b < a - 2 else entry_recurrence(q, a, b)

    lhs = m(i, j)
    rhs = m(i, k - 1) * m(k, j) - m(i, k - 2) * m(k + 1, j)
    return lhs == rhs


def bump(q: QuiddityRow, k: int, b: int) -> QuiddityRow:
    """Increase ``a_k`` by ``b``; the result is again an infinite frieze row.

    See :func:`bumped_entry` for the closed form of the new entries.
    """
    if b <= 0:
        raise ValueError("bump amount must be positive")
    return q.replace(k, q[k] + b)


def bumped_entry(q: QuiddityRow, k: int, b: int, i: int, j: int) -> int:
    """Entry of ``bump(q, k, b)`` at ``(i, j)``, from the entries of ``q``."""
    base = entry_recurrence(q, i, j)
    if not i <= k <= j:
        return base
    return base + b * entry_recurrence(q, i, k - 1) * entry_recurrence(q, k + 1, j)


def shortest_period(entries: Sequence[int]) -> int:
    n = len(entries)
    if n == 0:
        raise ValueError("empty tuple has no period")
    entries = tuple(entries)
    for r in range(1, n + 1):
        if n % r == 0 and entries == entries[:r] * (n // r):
            return r
    return n  # unreachable
