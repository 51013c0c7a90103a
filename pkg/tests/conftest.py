from __future__ import annotations

import random

from hypothesis import strategies as st

from decapsp.graph import DecrementalGraph
from decapsp.oracle import recompute


@st.composite
def digraphs(draw, max_n: int = 12, max_m: int = 40):
    """(n, edges, deletion order) with a shuffled full deletion order."""
    n = draw(st.integers(2, max_n))
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    m = draw(st.integers(0, min(max_m, len(pairs))))
    seed = draw(st.integers(0, 2**16))
    rng = random.Random(seed)
    edges = rng.sample(pairs, m)
    order = edges[:]
    rng.shuffle(order)
    return n, edges, order


def replay(n, edges, order, build, check):
    """Build a structure, then call ``check(g, structure)`` at clock 0 and after every deletion."""
    g = DecrementalGraph(n, edges)
    ds = build(g)
    check(g, ds)
    for a, b in order:
        g.delete_edge(a, b)
        check(g, ds)
    return ds


def assert_exact(g, ds):
    assert ds.matrix() == recompute(g), f"mismatch at clock {g.clock}"


def stretch_checker(eps):
    bound = (1 + eps) * (1 + 2.0**-40)
    history = {}

    def check(g, ds):
        want = recompute(g)
        got = ds.matrix()
        for u in range(g.n):
            for v in range(g.n):
                d, e = want[u][v], got[u][v]
                assert d <= e, (g.clock, u, v, d, e)
                assert e <= bound * d or d == e, (g.clock, u, v, d, e)
                assert e >= history.get((u, v), 0), ("estimate decreased", g.clock, u, v)
                history[(u, v)] = e

    return check


def path_is_valid(g, path, u, v):
    if path[0] != u or path[-1] != v:
        return False
    return all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
