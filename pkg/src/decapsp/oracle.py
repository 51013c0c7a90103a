"""Brute-force distances used as ground truth."""
from __future__ import annotations

import math
from collections import deque
from typing import Iterable

from .graph import DecrementalGraph

INF = math.inf


def bfs_from(g: DecrementalGraph, u: int, reverse: bool = False) -> list[float]:
    adj = g.in_adj if reverse else g.out_adj
    dist = [INF] * g.n
    dist[u] = 0
    queue = deque([u])
    while queue:
        w = queue.popleft()
        dw = dist[w] + 1
        for x in adj[w]:
            if dist[x] == INF:
                dist[x] = dw
                queue.append(x)
    return dist


def recompute(g: DecrementalGraph) -> list[list[float]]:
    """Full distance matrix by one BFS per source."""
    return [bfs_from(g, u) for u in range(g.n)]


def min_plus_closure(n: int, edges: Iterable[tuple[int, int]]) -> list[list[float]]:
    """Distance matrix by repeated min-plus squaring (independent second oracle)."""
    d = [[0 if a == b else INF for b in range(n)] for a in range(n)]
    for a, b in edges:
        d[a][b] = 1
    span = 1
    while span < n - 1:
        d = [[min(d[a][k] + d[k][b] for k in range(n)) for b in range(n)] for a in range(n)]
        span *= 2
    return d


class ShortestPathDag:
    """All shortest paths out of ``source``: distances plus predecessor sets."""

    def __init__(self, g: DecrementalGraph, source: int):
        self.source = source
        self.dist = bfs_from(g, source)
        self.preds: list[list[int]] = [[] for _ in range(g.n)]
        for a in range(g.n):
            da = self.dist[a]
            if da == INF:
                continue
            for b in g.out_adj[a]:
                if self.dist[b] == da + 1:
                    self.preds[b].append(a)
        self.order = sorted((v for v in range(g.n) if self.dist[v] < INF), key=self.dist.__getitem__)

    def _avoiding(self, blocked: set[int]) -> list[bool]:
        """reach[v]: some shortest source->v path has no vertex of ``blocked`` (v included)."""
        reach = [False] * len(self.dist)
        for v in self.order:
            if v in blocked:
                continue
            reach[v] = v == self.source or any(reach[p] for p in self.preds[v])
        return reach

    def every_path_hits(self, v: int, blocked: Iterable[int]) -> bool:
        """True iff every shortest source->v path meets ``blocked`` (vacuous if unreachable)."""
        if self.dist[v] == INF:
            return True
        return not self._avoiding(set(blocked))[v]

    def first_hits(self, v: int, blocked: Iterable[int]) -> set[int]:
        """Vertices of ``blocked`` that are the first blocked vertex on some shortest path to v."""
        if self.dist[v] == INF:
            return set()
        blocked = set(blocked)
        reach = self._avoiding(blocked)
        on_path = self.ancestors(v)
        out = set()
        for w in blocked:
            if w in on_path and (w == self.source or any(reach[p] for p in self.preds[w])):
                out.add(w)
        return out

    def ancestors(self, v: int) -> set[int]:
        """Vertices lying on at least one shortest source->v path."""
        seen = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for p in self.preds[w]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def all_paths(self, v: int) -> list[list[int]]:
        """Explicit enumeration; exponential, for tiny cross-checks only."""
        if self.dist[v] == INF:
            return []
        if v == self.source:
            return [[v]]
        return [p + [v] for w in self.preds[v] for p in self.all_paths(w)]


def shortest_path_dag(g: DecrementalGraph, u: int) -> ShortestPathDag:
    return ShortestPathDag(g, u)


def count_matrix_changes(trace) -> int:
    """Replay deletions, summing changed matrix entries per step."""
    g = DecrementalGraph(trace.n, trace.edges)
    cur = recompute(g)
    total = 0
    for a, b in trace.deletions():
        g.delete_edge(a, b)
        nxt = recompute(g)
        total += sum(x != y for ra, rb in zip(cur, nxt) for x, y in zip(ra, rb))
        cur = nxt
    return total
