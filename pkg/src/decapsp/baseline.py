"""Reference structure: one full-depth ES-tree per source."""
from __future__ import annotations

import math

from .errors import ClockSkew
from .estree import EsTree
from .graph import DecrementalGraph, Edge

INF = math.inf


class EsBaseline:
    """Exact APSP by n independent ES-trees of depth n - 1 (O(m n^2) total)."""

    name = "es_baseline"

    def __init__(self, g: DecrementalGraph, *, subscribe: bool = True):
        self.g = g
        self.n = g.n
        self.clock = g.clock
        depth = max(g.n - 1, 1)
        self.trees = [EsTree(g, u, depth) for u in range(g.n)]
        if subscribe:
            g.subscribe(self.on_delete)

    def on_delete(self, e: Edge) -> list[tuple[int, int, float, float]]:
        if self.clock + 1 != self.g.clock:
            raise ClockSkew(f"structure at clock {self.clock}, graph at {self.g.clock}")
        self.clock += 1
        out = []
        for u, tree in enumerate(self.trees):
            out += [(u, v, old, new) for v, old, new in tree.on_delete(e)]
        return out

    def query(self, u: int, v: int) -> float:
        return self.trees[u].level[v]

    def matrix(self) -> list[list[float]]:
        return [list(t.level) for t in self.trees]

    def report_path(self, u: int, v: int) -> list[int] | None:
        return self.trees[u].path(v)

    def metrics(self) -> dict[str, int]:
        return {"es_scans": sum(t.scans for t in self.trees)}
