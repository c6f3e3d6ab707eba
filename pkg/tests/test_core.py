from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from frieze.classifier import classify
from frieze.core import (
    QuiddityRow,
    bump,
    bumped_entry,
    entry_continuant,
    entry_recurrence,
    fragment,
    shortest_period,
    verify_ptolemy,
    verify_unimodular,
)


def det_by_elimination(diagonal):
    """Fraction Gaussian elimination of the tridiagonal matrix; test oracle only."""
    n = len(diagonal)
    a = [[Fraction(0)] * n for _ in range(n)]
    for r in range(n):
        a[r][r] = Fraction(diagonal[r])
        if r + 1 < n:
            a[r][r + 1] = a[r + 1][r] = Fraction(1)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    assert det.denominator == 1
    return int(det)


rows = st.lists(st.integers(1, 6), min_size=1, max_size=8).map(QuiddityRow.periodic)


def test_constant_two_entries():
    q = QuiddityRow.periodic([2])
    assert entry_recurrence(q, 0, 5) == 7
    assert entry_continuant(q, 0, 0) == 2
    assert entry_continuant(q, 0, 3) == 5


def test_seed_rows():
    q = QuiddityRow.periodic([4, 1, 5])
    for i in range(-3, 4):
        assert entry_recurrence(q, i, i - 1) == 1
        assert entry_recurrence(q, i, i - 2) == 0


def test_recurrence_rejects_above_zero_row():
    with pytest.raises(ValueError):
        entry_recurrence(QuiddityRow.periodic([2]), 3, 0)


def test_constant_three_matches_elimination():
    q = QuiddityRow.periodic([3])
    assert entry_recurrence(q, 0, 2) == 21 == det_by_elimination([3, 3, 3])


def test_continuant_agrees_on_period_one_three():
    q = QuiddityRow.periodic([1, 3])
    assert entry_continuant(q, 0, 3) == entry_recurrence(q, 0, 3)


@settings(max_examples=150, deadline=None)
@given(rows, st.integers(-5, 5), st.integers(0, 9))
def test_continuant_equals_elimination(q, i, d):
    assert entry_continuant(q, i, i + d) == det_by_elimination(q.values(i, i + d))


def test_windowed_pads_with_two():
    q = QuiddityRow.windowed([3, 1, 3], lo=5)
    assert [q[i] for i in range(3, 10)] == [2, 2, 3, 1, 3, 2, 2]


def test_row_rejects_nonpositive():
    with pytest.raises(ValueError):
        QuiddityRow.periodic([2, 0])
    with pytest.raises(ValueError):
        QuiddityRow.windowed([])


def test_fragment_constant_rows():
    f = fragment(QuiddityRow.periodic([2]), range(6), 4)
    for d in range(-2, 5):
        assert f.row(d) == (d + 2,) * 6


def test_fragment_trivial_rows_only():
    f = fragment(QuiddityRow.periodic([3]), range(4), -1)
    assert f.rows == ((0,) * 4, (1,) * 4)


def test_fragment_finite_shape():
    f = fragment(QuiddityRow.periodic([2, 1, 3]), range(3), 4)
    assert f.row(3) == (1, 1, 1)
    assert f.row(4) == (0, 0, 0)


def test_fragment_matches_recurrence():
    q = QuiddityRow.periodic([4, 1, 5, 1])
    f = fragment(q, range(-2, 6), 7)
    for i in range(-2, 6):
        for d in range(-2, 8):
            assert f[i, i + d] == entry_recurrence(q, i, i + d)


def test_unimodular_passes_on_constant_row():
    assert verify_unimodular(fragment(QuiddityRow.periodic([2]), range(8), 6)).ok


def test_perturbed_entry_breaks_touching_diamonds():
    f = fragment(QuiddityRow.periodic([2]), range(10), 8)
    bad = f.bumped(4, 7)
    report = verify_unimodular(bad)
    assert not report.ok
    assert 1 <= len(report.failures) <= 4
    assert set(report.failures) <= {(4, 7), (3, 6), (3, 7), (4, 6)}


def test_bumped_boundary_is_reported():
    f = fragment(QuiddityRow.periodic([2]), range(4), 3).bumped(1, -1)
    report = verify_unimodular(f)
    assert (1, -1) in report.boundary_failures


def test_unimodular_on_example_bump():
    q = bump(QuiddityRow.periodic([2]), 0, 1)
    assert verify_unimodular(fragment(q, range(-10, 10), 10)).ok


def test_ptolemy_degenerate_k_equals_i():
    q = QuiddityRow.periodic([3, 1, 4])
    assert verify_ptolemy(q, 2, 6, 2)


def test_ptolemy_constant_two():
    q = QuiddityRow.periodic([2])
    assert entry_recurrence(q, 0, 5) == 7
    assert entry_recurrence(q, 0, 2) * entry_recurrence(q, 3, 5) - entry_recurrence(q, 0, 1) * entry_recurrence(q, 4, 5) == 7
    assert verify_ptolemy(q, 0, 5, 3)


def test_ptolemy_precondition():
    with pytest.raises(ValueError):
        verify_ptolemy(QuiddityRow.periodic([2]), 0, 3, 5)


@settings(max_examples=200, deadline=None)
@given(st.integers(-4, 4), st.data())
def test_ptolemy_on_one_four(i, data):
    q = QuiddityRow.periodic([1, 4])
    j = data.draw(st.integers(i, i + 10))
    k = data.draw(st.integers(i, j + 1))
    assert verify_ptolemy(q, i, j, k)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=6), st.data())
def test_ptolemy_on_friezes(entries, data):
    if classify(entries).outcome == "not_a_frieze":
        return
    q = QuiddityRow.periodic(entries)
    i = data.draw(st.integers(-3, 3))
    j = data.draw(st.integers(i, i + 12))
    k = data.draw(st.integers(i, j + 1))
    assert verify_ptolemy(q, i, j, k)


def test_left_and_right_recurrences_agree():
    q = QuiddityRow.periodic([3, 1, 4, 2])
    for i in range(-3, 3):
        for j in range(i + 1, i + 10):
            left = q[j] * entry_recurrence(q, i, j - 1) - entry_recurrence(q, i, j - 2)
            right = q[i] * entry_recurrence(q, i + 1, j) - entry_recurrence(q, i + 2, j)
            assert left == right


def test_example_bump_entry():
    q2 = QuiddityRow.windowed([2, 2, 2, 2, 2], lo=-2)
    k = 0
    q = bump(q2, k, 1)
    assert entry_recurrence(q, k - 4, k + 1) == 17
    assert entry_recurrence(q2, k - 4, k + 1) == 7
    assert bumped_entry(q2, k, 1, k - 4, k + 1) == 7 + 5 * 2


def test_bump_outside_cone_unchanged():
    q = QuiddityRow.periodic([2])
    b = bump(q, 0, 3)
    for i, j in [(1, 4), (-5, -1), (2, 2)]:
        assert entry_recurrence(b, i, j) == entry_recurrence(q, i, j)


def test_bump_rejects_nonpositive_amount():
    with pytest.raises(ValueError):
        bump(QuiddityRow.periodic([2]), 0, 0)


def test_two_bumps_still_infinite():
    q = bump(bump(QuiddityRow.periodic([2, 2, 2]), 0, 1), 4, 1)
    f = fragment(q, range(-6, 10), 8)
    assert verify_unimodular(f).ok
    assert all(v > 0 for d in range(0, 9) for v in f.row(d))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 5), min_size=1, max_size=5), st.integers(-3, 3), st.integers(1, 4))
def test_bump_closed_form(entries, k, b):
    q = QuiddityRow.periodic(entries)
    bq = bump(q, k, b)
    for i in range(k - 6, k + 2):
        for j in range(i, i + 10):
            assert entry_recurrence(bq, i, j) == bumped_entry(q, k, b, i, j)


def test_bump_keeps_periodic_background():
    q = bump(QuiddityRow.periodic([3, 4]), 5, 2)
    assert q[5] == 6 and q[3] == 4 and q[6] == 3


def test_shortest_period():
    assert shortest_period((5, 1, 5, 1)) == 2
    assert shortest_period((2,)) == 1
    assert shortest_period((1, 2, 3)) == 3


def test_columns_grow_for_rows_at_least_two():
    q = QuiddityRow.periodic([2, 3, 2, 5])
    f = fragment(q, range(8), 10)
    for i in range(8):
        for d in range(0, 10):
            assert f[i, i + d + 1] > f[i, i + d]
