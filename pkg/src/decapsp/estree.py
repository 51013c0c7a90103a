"""Even-Shiloach trees: depth-bounded BFS trees maintained under deletions."""
from __future__ import annotations

import heapq
import math
from collections import deque

from .errors import ClockSkew
from .graph import DecrementalGraph, Edge

INF = math.inf

FROM_SOURCE = "from_source"
TO_SOURCE = "to_source"


class EsTree:
    """Depth-bounded shortest-path tree rooted at ``source``.

    ``orientation=FROM_SOURCE`` tracks d(source, v); ``TO_SOURCE`` tracks
    d(v, source), i.e. BFS in the reversed graph.  Levels past ``depth`` are
    reported as ``inf`` and the vertex is never rescanned.

    Each vertex keeps a cursor into its frozen candidate-parent list (the
    initial in-neighbors, or out-neighbors for ``TO_SOURCE``); the entry at
    the cursor is the current parent.  ``scans`` counts every candidate
    inspection and child check, which is the quantity bounded by O(m*depth).
    """

    def __init__(self, g: DecrementalGraph, source: int, depth: int, orientation: str = FROM_SOURCE):
        if depth < 1:
            raise ValueError("depth bound must be >= 1")
        if orientation not in (FROM_SOURCE, TO_SOURCE):
            raise ValueError(f"unknown orientation {orientation!r}")
        self.g = g
        self.source = source
        self.depth = depth
        self.orientation = orientation
        if orientation == FROM_SOURCE:
            self._cand = g.initial_in
            self._children = g.out_adj
        else:
            self._cand = g.initial_out
            self._children = g.in_adj
        n = g.n
        self.level: list[float] = [INF] * n
        self.cursor = [0] * n
        self.scans = 0
        self.clock = g.clock
        self._build()

    def _alive(self, parent: int, child: int) -> bool:
        if self.orientation == FROM_SOURCE:
            return self.g.has_edge(parent, child)
        return self.g.has_edge(child, parent)

    def _build(self) -> None:
        level = self.level
        level[self.source] = 0
        queue = deque([self.source])
        while queue:
            w = queue.popleft()
            lw = level[w]
            if lw == self.depth:
                continue
            for x in self._children[w]:
                if level[x] == INF:
                    level[x] = lw + 1
                    queue.append(x)
        for v in range(self.g.n):
            if v != self.source and level[v] != INF:
                self.cursor[v] = self._find_parent(v, 0, level[v])

    def _find_parent(self, v: int, start: int, lv) -> int:
        cand = self._cand[v]
        level = self.level
        c = start
        while c < len(cand):
            p = cand[c]
            self.scans += 1
            if level[p] == lv - 1 and self._alive(p, v):
                return c
            c += 1
        return c

    def parent(self, v: int) -> int | None:
        if v == self.source or self.level[v] == INF:
            return None
        return self._cand[v][self.cursor[v]]

    def path(self, v: int) -> list[int] | None:
        """Tree path between source and v, listed in edge direction."""
        if self.level[v] == INF:
            return None
        out = [v]
        while v != self.source:
            v = self.parent(v)
            out.append(v)
        if self.orientation == FROM_SOURCE:
            out.reverse()
        return out

    def on_delete(self, e: Edge) -> list[tuple[int, float, float]]:
        """Apply an already-performed graph deletion; return (v, old, new) level changes."""
        if self.clock + 1 != self.g.clock:
            raise ClockSkew(f"tree at clock {self.clock}, graph at {self.g.clock}")
        self.clock += 1
        a, b = e
        child, par = (b, a) if self.orientation == FROM_SOURCE else (a, b)
        level = self.level
        lc = level[child]
        if lc == INF or child == self.source or level[par] != lc - 1:
            return []
        cand = self._cand
        if cand[child][self.cursor[child]] != par:
            return []
        cursor = self.cursor
        changed: dict[int, float] = {}
        heap = [(lc, child)]
        while heap:
            lv, v = heapq.heappop(heap)
            if lv != level[v]:
                continue
            c = self._find_parent(v, cursor[v], lv)
            if c < len(cand[v]):
                cursor[v] = c
                continue
            changed.setdefault(v, lv)
            for x in self._children[v]:
                self.scans += 1
                if level[x] == lv + 1 and cand[x][cursor[x]] == v:
                    heapq.heappush(heap, (lv + 1, x))
            if lv + 1 > self.depth:
                level[v] = INF
            else:
                level[v] = lv + 1
                cursor[v] = 0
                heapq.heappush(heap, (lv + 1, v))
        return [(v, old, level[v]) for v, old in sorted(changed.items())]
