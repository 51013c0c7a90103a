from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from decapsp.errors import BadParams
from decapsp.trace import DeletionTrace, layered_trace, lower_bound, random_trace


def test_lower_bound_n5():
    # 1-based (1,2),(2,3),(3,4),(4,5),(1,3),(3,5) shifted to 0-based
    tr = lower_bound(5)
    assert set(tr.edges) == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 2), (2, 4)}
    assert tr.deletions() == [(0, 2), (2, 4)]


def test_lower_bound_needs_odd_n():
    with pytest.raises(BadParams):
        lower_bound(6)


def test_densified_deletes_extras_first():
    tr = lower_bound(9, extra=5, seed=1)
    skips = [(0, 2), (2, 4), (4, 6), (6, 8)]
    assert tr.m == 8 + 4 + 5
    assert tr.deletions()[-4:] == skips
    assert set(tr.deletions()[:5]).isdisjoint(skips)
    tr.validate()


def test_random_reproducible():
    assert random_trace(10, 20, 7).serialize() == random_trace(10, 20, 7).serialize()
    assert random_trace(10, 20, 7).serialize() != random_trace(10, 20, 8).serialize()


def test_random_too_dense():
    with pytest.raises(BadParams):
        random_trace(4, 13, 0)


def test_parse_errors():
    for text in ["", "3\n", "2 1\nE 0 1\nE 1 0\n", "2 1\nX 0 1\n", "2 1\nE 0 a\n", "2 1\nD 0 1\nE 0 1\n"]:
        with pytest.raises(BadParams):
            DeletionTrace.parse(text)


def test_validate_rejects_absent_deletion():
    with pytest.raises(BadParams):
        DeletionTrace(3, [(0, 1)], [("D", 1, 2)]).validate()


def test_comments_and_queries():
    tr = DeletionTrace.parse("# header\n3 2\nE 0 1\nE 1 2  # tail\nQ 0 2\nD 0 1\nQA\n")
    assert tr.events == [("Q", 0, 2), ("D", 0, 1), ("QA",)]


@given(st.integers(2, 15), st.integers(0, 10**6), st.booleans(), st.data())
def test_round_trip(n, seed, queries, data):
    m = data.draw(st.integers(0, n * (n - 1)))
    tr = random_trace(n, m, seed, queries=queries)
    text = tr.serialize()
    again = DeletionTrace.parse(text)
    assert again == tr and again.serialize() == text


def test_layered_depth():
    tr = layered_trace(5, 3, 0.4, 2)
    assert tr.n == 15
    assert all(b // 3 == a // 3 + 1 for a, b in tr.edges)
