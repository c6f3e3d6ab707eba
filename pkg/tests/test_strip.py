import itertools

import pytest
from hypothesis import given, settings, strategies as st

from frieze.classifier import INFINITE, classify
from frieze.core import QuiddityRow, fragment
from frieze.strip import (
    PEEL_CAP_ENV,
    AdjacentOnes,
    OutsideCore,
    RoundLimitExceeded,
    StripArc,
    check_strip,
    realize_strip,
    strip_quiddity,
    triangles_in_range,
)


def window(entries, lo=0):
    return QuiddityRow.windowed(entries, lo=lo)


def expected(q, S):
    return tuple(q[x] for x in range(S.core[0], S.core[1] + 1))


def test_all_twos_window():
    S = realize_strip(window([2, 2, 2]))
    assert not check_strip(S)
    assert set(strip_quiddity(S)) == {2}
    assert all(a.kind == "bridging" for a in S.arcs)


def test_three_one_three():
    q = window([3, 1, 3], lo=0)
    S = realize_strip(q)
    assert strip_quiddity(S) == expected(q, S)
    assert strip_quiddity(S, range(-1, 4)) == (2, 3, 1, 3, 2)
    assert StripArc("lower", 0, 2) in S.arcs
    assert len(S.rounds) == 1 and S.rounds[0].removed == (1,)


def test_adjacent_ones_rejected():
    with pytest.raises(AdjacentOnes) as err:
        realize_strip(window([2, 1, 2]))
    assert err.value.position is not None


def test_zero_after_peeling_rejected():
    # peeling the two 1s leaves a 0 between them
    with pytest.raises(AdjacentOnes):
        realize_strip(window([1, 2, 1]))


def test_round_cap_argument():
    with pytest.raises(RoundLimitExceeded) as err:
        realize_strip(window([3, 1, 3]), peel_cap=0)
    assert err.value.cap == 0


def test_round_cap_environment(monkeypatch):
    monkeypatch.setenv(PEEL_CAP_ENV, "1")
    q = window([4, 1, 3, 1, 4])
    with pytest.raises(RoundLimitExceeded):
        realize_strip(q)
    monkeypatch.delenv(PEEL_CAP_ENV)
    S = realize_strip(q)
    assert strip_quiddity(S) == expected(q, S)


def test_one_next_to_the_padding_rejected():
    # ...2, 2, 1, 3, 2... has a zero two rows up
    with pytest.raises(AdjacentOnes):
        realize_strip(window([1, 3], lo=10))


def test_two_peeling_rounds():
    S = realize_strip(window([4, 1, 3, 1, 4]))
    assert [st.removed for st in S.rounds] == [(1, 3), (2,)]


def test_outside_core():
    S = realize_strip(window([3, 1, 3]))
    with pytest.raises(OutsideCore):
        strip_quiddity(S, range(S.core[0] - 1, S.core[1]))
    with pytest.raises(OutsideCore):
        triangles_in_range(S, S.core[0], S.core[1] + 1)


def test_triangles_in_range_corners():
    S = realize_strip(window([3, 1, 3]))
    tris = triangles_in_range(S, 0, 2)
    corners = [c for _, c in tris]
    # the ear at 1 has all three corners in range
    assert frozenset({0, 1, 2}) in corners
    assert sum(len(c) for c in corners) == 3 + 1 + 3


def test_face_count_in_core():
    """A triangulated stretch between two bridging arcs has as many
    triangles as boundary segments between its corners."""
    S = realize_strip(window([4, 1, 3, 2, 1, 5]))
    lo, hi = S.core
    bridging_at = {a.a for a in S.arcs if a.kind == "bridging"}
    a = min(x for x in bridging_at if x >= lo)
    b = max(x for x in bridging_at if x <= hi)
    ups = {a2.b for a2 in S.arcs if a2.kind == "bridging" and a2.a in (a, b)}
    inside = [t for t in S.triangles()
              if all((v[0] == "L" and a <= v[1] <= b) or (v[0] == "U" and min(ups) <= v[1] <= max(ups))
                     for v in t)]
    uppers_used = sorted({v[1] for t in inside for v in t if v[0] == "U"})
    assert len(inside) == (b - a) + (len(uppers_used) - 1)


@pytest.mark.parametrize("entries", [[2, 3, 1, 3], [5], [3, 1, 4, 1, 3], [4, 1, 3, 1, 4]])
def test_windows_round_trip(entries):
    q = window(entries, lo=-2)
    S = realize_strip(q)
    assert not check_strip(S)
    assert strip_quiddity(S) == expected(q, S)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=10), st.integers(-5, 5))
def test_realization_round_trip_or_rejection(entries, lo):
    q = window(entries, lo=lo)
    try:
        S = realize_strip(q)
    except AdjacentOnes:
        f = fragment(q, range(q.lo - len(entries) - 4, q.hi + 5), len(entries) + 4)
        assert any(v <= 0 for d in range(0, len(entries) + 5) for v in f.row(d))
        return
    assert not check_strip(S)
    assert strip_quiddity(S) == expected(q, S)


def test_layers_are_compatible():
    S = realize_strip(window([3, 1, 4, 1, 3]))
    for p, q in itertools.combinations(S.arcs, 2):
        if p.kind == q.kind == "lower":
            assert not (p.a < q.a < p.b < q.b or q.a < p.a < q.b < p.b)


@pytest.mark.parametrize("n", range(1, 7))
def test_periodic_verdict_agrees_with_classifier(n):
    for entries in itertools.product(range(1, 5), repeat=n):
        q = QuiddityRow.periodic(entries)
        try:
            S = realize_strip(q)
        except AdjacentOnes:
            assert classify(entries).outcome != INFINITE, entries
            continue
        assert classify(entries).outcome == INFINITE, entries
        assert strip_quiddity(S) == expected(q, S)


def test_periodic_core_is_wide():
    S = realize_strip(QuiddityRow.periodic([3]))
    assert S.core[1] - S.core[0] >= 12
    assert set(strip_quiddity(S)) == {3}
