"""Machinery shared by the scale-leveled APSP structures.

Pairs are encoded as ``u * n + v``.  ``tables[0]`` holds the bounded
ES-tree distances; ``tables[t + 1]`` holds the prefix estimate after level
``levels[t]``.  Each deletion flows upward one level at a time; a level sees
a dict ``pair -> old value`` of the pairs whose previous-level estimate
moved, and hands the same kind of dict to the next level.

Once a level's prefix estimate of a pair exceeds the largest value that
level can ever legitimately need, it is set to ``inf`` and the pair's queue
at that level is discarded.  That keeps every guarantee (estimates stay
upper bounds of the distance, and are unchanged wherever the level is
responsible for them) while letting only about one level per pair stay live.
"""
from __future__ import annotations

import math
from collections import defaultdict

from .errors import ClockSkew
from .estree import EsTree
from .graph import DecrementalGraph, Edge
from .scales import ScaleLadder
from .separator import SeparatorState

INF = math.inf


class LeveledApsp:
    """Base class: ES-tree base layer, per-level separators and the upward pipeline."""

    name = "leveled"

    def __init__(
        self,
        g: DecrementalGraph,
        ladder: ScaleLadder,
        cutoff: int,
        *,
        subscribe: bool = True,
        check_contract: bool = True,
    ):
        self.g = g
        self.n = n = g.n
        self.ladder = ladder
        self.clock = g.clock
        self.cutoff = cutoff
        first = ladder.first_level(cutoff)
        base_depth = self._base_depth(first)
        if n < 2 or base_depth >= n - 1:
            base_depth = max(n - 1, 1)
            self.levels: list[int] = []
        else:
            self.levels = []
            i = first
            while ladder.scale_floor(i) < n - 1:
                if self._level_top(i) > ladder.scale_floor(i):
                    self.levels.append(i)
                i += 1
        self.base_depth = base_depth
        self.trees = [EsTree(g, u, base_depth) for u in range(n)]
        base = [INF] * (n * n)
        for u, tree in enumerate(self.trees):
            base[u * n : (u + 1) * n] = tree.level
        self.tables: list[list[float]] = [base] + [[0] * (n * n) for _ in self.levels]
        self.seps: list[list[SeparatorState]] = [
            [SeparatorState(g, u, self._sep_scale(i), check_contract=check_contract) for u in range(n)]
            for i in self.levels
        ]
        self.counters: dict[str, int] = defaultdict(int)
        self._setup_levels()
        changed = {p: 0 for p in range(n * n) if p // n != p % n}
        for t in range(len(self.levels)):
            changed = self._run_level(t, changed, initial=True)
        if subscribe:
            g.subscribe(self.on_delete)

    # hooks -----------------------------------------------------------------
    def _base_depth(self, first: int) -> int:
        return self.ladder.scale_floor(first)

    def _level_top(self, i: int) -> int:
        """Largest distance level i is responsible for (it owns (floor(D_i), top])."""
        return self.ladder.scale_floor(i + 1)

    def _sep_scale(self, i: int):
        rho = self.ladder.rho
        return rho**i

    def _setup_levels(self) -> None:
        pass

    def _level_values(self, t: int, changed: dict[int, float], new_sep: dict[int, list[int]], initial: bool) -> set[int]:
        """Update level ``t`` queues; return pairs whose level value may have moved."""
        raise NotImplementedError

    def _level_value(self, t: int, p: int) -> float:
        raise NotImplementedError

    def _truncate_at(self, t: int) -> float:
        raise NotImplementedError

    def _retire(self, t: int, p: int) -> None:
        pass

    # pipeline ----------------------------------------------------------------
    def on_delete(self, e: Edge) -> list[tuple[int, int, float, float]]:
        if self.clock + 1 != self.g.clock:
            raise ClockSkew(f"structure at clock {self.clock}, graph at {self.g.clock}")
        self.clock += 1
        n = self.n
        base = self.tables[0]
        changed: dict[int, float] = {}
        for u, tree in enumerate(self.trees):
            for v, old, new in tree.on_delete(e):
                p = u * n + v
                changed[p] = old
                base[p] = new
        for t in range(len(self.levels)):
            if not changed:
                break
            changed = self._run_level(t, changed, initial=False)
        last = self.tables[-1]
        return [(p // n, p % n, old, last[p]) for p, old in sorted(changed.items())]

    def _run_level(self, t: int, changed: dict[int, float], initial: bool) -> dict[int, float]:
        n = self.n
        prev = self.tables[t]
        cur = self.tables[t + 1]
        seps = self.seps[t]
        trig = seps[0].trigger_threshold if seps else INF
        new_sep: dict[int, list[int]] = {}
        for p in sorted(changed):
            old, new = changed[p], prev[p]
            if old < trig <= new:
                u, v = divmod(p, n)
                added = seps[u].on_trigger(v)
                if added:
                    new_sep.setdefault(u, []).extend(added)
        touched = self._level_values(t, changed, new_sep, initial)
        touched.update(changed)
        top = INF if t == len(self.levels) - 1 else self._truncate_at(t)
        out: dict[int, float] = {}
        for p in touched:
            old = cur[p]
            if old == INF and not initial:
                continue
            val = min(prev[p], self._level_value(t, p))
            if val > top:
                val = INF
                self._retire(t, p)
            if val != old:
                cur[p] = val
                out[p] = old
        return out

    # queries -----------------------------------------------------------------
    def query(self, u: int, v: int) -> float:
        if u == v:
            return 0
        return self.tables[-1][u * self.n + v]

    def matrix(self) -> list[list[float]]:
        n = self.n
        last = self.tables[-1]
        return [[0 if u == v else last[u * n + v] for v in range(n)] for u in range(n)]

    def separator_sizes(self) -> list[list[int]]:
        return [[s.size for s in row] for row in self.seps]

    def metrics(self) -> dict[str, int]:
        out = dict(self.counters)
        out["levels"] = len(self.levels)
        out["base_depth"] = self.base_depth
        out["es_scans"] = sum(t.scans for t in self.trees)
        out["separator_work"] = sum(s.work for row in self.seps for s in row)
        out["separator_size"] = sum(s.size for row in self.seps for s in row)
        out["separator_fallbacks"] = sum(s.fallbacks for row in self.seps for s in row)
        out["separator_shared_edges"] = sum(s.shared_edges for row in self.seps for s in row)
        return out

    def _lowest_level_with(self, p: int, value: float) -> int:
        """Smallest table index whose entry for ``p`` equals ``value``."""
        for k, table in enumerate(self.tables):
            if table[p] == value:
                return k
        raise AssertionError("value not attained at any level")

    def _witness(self, t: int, p: int, value: float) -> int:
        raise NotImplementedError

    def report_path(self, u: int, v: int) -> list[int] | None:
        """A path in the current graph of length at most ``query(u, v)``."""
        if u == v:
            return [u]
        if self.query(u, v) == INF:
            return None
        return self._path(u, v)

    def _path(self, u: int, v: int) -> list[int]:
        n = self.n
        out: list[int] = [u]
        stack = [(u, v, None)]
        while stack:
            a, b, bound = stack.pop()
            if a == b:
                continue
            p = a * n + b
            k = self._lowest_level_with(p, self.tables[-1][p] if bound is None else bound)
            if k == 0:
                out.extend(self.trees[a].path(b)[1:])
                continue
            value = self.tables[k][p]
            s = self._witness(k - 1, p, value)
            below = self.tables[k - 1]
            # the second leg goes on the stack first so the first leg is expanded next
            stack.append((s, b, below[s * n + b]))
            stack.append((a, s, below[a * n + s]))
        return out
