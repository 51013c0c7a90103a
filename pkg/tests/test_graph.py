from __future__ import annotations

import pytest
from hypothesis import given

from decapsp.errors import DuplicateEdge, EdgeAbsent, SelfLoop, VertexOutOfRange
from decapsp.graph import DecrementalGraph

from .conftest import digraphs


def test_construction():
    g = DecrementalGraph.from_edge_list(3, [(0, 1), (1, 2)])
    assert g.m == 2 and g.clock == 0 and g.initial_m == 2


@pytest.mark.parametrize(
    "n, edges, err",
    [(2, [(0, 0)], SelfLoop), (4, [(0, 1), (0, 1)], DuplicateEdge), (2, [(0, 2)], VertexOutOfRange)],
)
def test_bad_input(n, edges, err):
    with pytest.raises(err):
        DecrementalGraph(n, edges)


def test_delete_and_double_delete():
    g = DecrementalGraph(3, [(0, 1), (1, 2)])
    g.delete_edge(0, 1)
    assert g.m == 1 and g.clock == 1
    with pytest.raises(EdgeAbsent):
        g.delete_edge(0, 1)
    assert g.clock == 1


def test_subscribers_notified_in_order():
    g = DecrementalGraph(3, [(0, 1), (1, 2)])
    seen = []
    g.subscribe(lambda e: seen.append(("a", e)) or "a")
    g.subscribe(lambda e: seen.append(("b", e)) or "b")
    assert g.delete_edge(1, 2) == ["a", "b"]
    assert seen == [("a", (1, 2)), ("b", (1, 2))]


def test_degree_budget_is_multiple_of_delta():
    g = DecrementalGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)])
    delta = 2  # ceil(5 / 4)
    for v, b in enumerate(g.degree_budget()):
        assert b % delta == 0 and b >= len(g.initial_out[v]) + len(g.initial_in[v]) and b > 0


@given(digraphs())
def test_reverse_adjacency_consistent(case):
    n, edges, order = case
    g = DecrementalGraph(n, edges)
    for k, (a, b) in enumerate(order):
        g.delete_edge(a, b)
        assert g.clock == k + 1 and g.m == len(edges) - k - 1
        for x in range(n):
            for y in g.out_adj[x]:
                assert x in g.in_adj[y]
            for y in g.in_adj[x]:
                assert x in g.out_adj[y]
    assert g.m == 0 and g.clock == len(edges)
