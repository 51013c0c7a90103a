"""Drive a separator with exact distances and check its contract verbatim."""
from __future__ import annotations

import math
from fractions import Fraction

from decapsp.estree import EsTree
from decapsp.graph import DecrementalGraph
from decapsp.oracle import recompute, shortest_path_dag
from decapsp.separator import SeparatorState

INF = math.inf


def drive_separator(n, edges, order, source, d, check_part2=True):
    """Replay ``order``; return the separator and a list of contract violations."""
    d = Fraction(d)
    g = DecrementalGraph(n, edges)
    tree = EsTree(g, source, max(n - 1, 1))
    sep = SeparatorState(g, source, d)
    sep.feed([(v, 0, tree.level[v]) for v in range(n)])
    problems: list[str] = []
    # per target: distinct snapshot lengths at clocks where d < dist <= 34d/33
    anchors: dict[int, set[int]] = {v: set() for v in range(n)}
    hi = Fraction(34, 33) * d

    def check():
        dist = recompute(g)
        ds = dist[source]
        reach = sep.reachable()
        for v in range(n):
            if reach[v] and not ds[v] < Fraction(32, 33) * d:
                problems.append(f"clock {g.clock}: {v} reachable at distance {ds[v]}")
            if not reach[v] and sep.floor_breaches == 0 and not ds[v] > Fraction(2, 3) * d:
                problems.append(f"clock {g.clock}: {v} cut off at distance {ds[v]}")
            if ds[v] != INF and d < ds[v] <= hi:
                anchors[v].add(sep.size)
        if not check_part2:
            return
        dag = None
        for v in range(n):
            if not anchors[v] or ds[v] == INF or ds[v] > hi:
                continue
            dag = dag or shortest_path_dag(g, source)
            for length in anchors[v]:
                snap = sep.log[:length]
                if not dag.every_path_hits(v, snap):
                    problems.append(f"clock {g.clock}: a shortest path to {v} misses S({length})")
                    continue
                for w in dag.first_hits(v, snap):
                    if not (ds[w] <= d and dist[w][v] <= d):
                        problems.append(f"clock {g.clock}: first hit {w} for {v} too far")

    check()
    for a, b in order:
        g.delete_edge(a, b)
        sep.feed(tree.on_delete((a, b)))
        check()
    return sep, problems
