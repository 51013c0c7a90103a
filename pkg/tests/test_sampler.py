from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from decapsp.errors import ProbabilityOutOfRange
from decapsp.sampler import build_table, sample_first_index, sample_subset


def test_point_masses():
    t = build_table(0.5, 3)
    tol = 2.0**-50
    assert [t.point(k) for k in (1, 2, 3)] == pytest.approx([0.5, 0.25, 0.125], abs=tol)
    assert t.tail(3) == pytest.approx(0.125, abs=tol)


def test_degenerate_probabilities():
    zero, one = build_table(0.0, 5), build_table(1.0, 5)
    assert zero.tail(5) == 1.0 and all(zero.point(k) == 0 for k in range(1, 6))
    assert one.point(1) == 1.0 and all(one.point(k) == 0 for k in range(2, 6))
    rng = random.Random(0)
    assert sample_first_index(one, 5, rng) == 1
    assert sample_first_index(zero, 5, rng) is None
    assert sample_subset(one, 5, rng) == [1, 2, 3, 4, 5]
    assert sample_subset(zero, 5, rng) == []


@pytest.mark.parametrize("p", [-0.1, 1.5, float("nan")])
def test_bad_probability(p):
    with pytest.raises(ProbabilityOutOfRange):
        build_table(p, 4)


@given(st.floats(0.0, 1.0), st.integers(1, 300))
def test_masses_sum_to_one(p, n):
    t = build_table(p, n)
    assert abs(t.mass(1, n, n) + t.tail(n) - 1.0) <= 2.0**-50 * 4
    mid = n // 2
    if mid >= 1:
        assert abs(t.mass(1, mid, n) + t.mass(mid + 1, n, n) - t.mass(1, n, n)) <= 1e-15


def test_window_larger_than_table():
    with pytest.raises(ValueError):
        sample_first_index(build_table(0.3, 4), 5, random.Random(0))


def test_first_index_law_small():
    from scipy.stats import chisquare

    t = build_table(0.3, 10)
    rng = np.random.default_rng(11)
    counts = np.zeros(11)
    for _ in range(20000):
        k = sample_first_index(t, 10, rng)
        counts[(k or 11) - 1] += 1
    probs = [t.point(k) for k in range(1, 11)] + [t.tail(10)]
    assert chisquare(counts, np.array(probs) * counts.sum()).pvalue > 0.001


def test_subset_reproducible_and_sorted():
    t = build_table(0.2, 50)
    a = sample_subset(t, 50, random.Random(3))
    b = sample_subset(t, 50, random.Random(3))
    assert a == b == sorted(set(a))
    assert all(1 <= k <= 50 for k in a)


def test_subset_pairwise_independence_spot():
    t = build_table(0.2, 50)
    rng = np.random.default_rng(7)
    both = first = 0
    for _ in range(10000):
        s = set(sample_subset(t, 50, rng))
        first += 3 in s
        both += 3 in s and 40 in s
    assert abs(first / 10000 - 0.2) < 0.02
    assert abs(both / 10000 - 0.04) < 0.01
