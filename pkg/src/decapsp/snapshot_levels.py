"""Levels that freeze a separator snapshot per pair and keep a witness queue over it."""
from __future__ import annotations

import math

from .leveled import INF, LeveledApsp


class SnapshotQueueLevels(LeveledApsp):
    """Per level: snapshot on threshold crossing, witness queues, reverse index.

    The reverse index maps a previous-level pair ("leg") to the queues whose
    member keys depend on it: ``first[leg=(u,s)]`` lists targets v of queues
    (u, v) holding s, ``second[leg=(s,v)]`` lists sources u of queues (u, v)
    holding s.  Entries of discarded queues are dropped lazily.
    """

    def _snapshot_at(self, t: int) -> int:
        raise NotImplementedError

    def _make_queue(self, t: int, keys: dict[int, float]):
        raise NotImplementedError

    def _setup_levels(self) -> None:
        L = len(self.levels)
        self.queues: list[dict[int, object]] = [{} for _ in range(L)]
        self.first: list[dict[int, list[int]]] = [{} for _ in range(L)]
        self.second: list[dict[int, list[int]]] = [{} for _ in range(L)]
        self.snap_at = [self._snapshot_at(t) for t in range(L)]

    def _level_values(self, t, changed, new_sep, initial) -> set[int]:
        n = self.n
        prev = self.tables[t]
        queues = self.queues[t]
        first, second = self.first[t], self.second[t]
        snap = self.snap_at[t]
        touched: set[int] = set()
        created: set[int] = set()
        c = self.counters
        for p, old in changed.items():
            if old <= snap < prev[p]:
                u, v = divmod(p, n)
                keys = {}
                un, vn = u * n, v
                for s in self.seps[t][u].snapshot():
                    keys[s] = prev[un + s] + prev[s * n + vn]
                    if s != u:
                        first.setdefault(un + s, []).append(v)
                    if s != v:
                        second.setdefault(s * n + v, []).append(u)
                queues[p] = self._make_queue(t, keys)
                c["queue_inserts"] += len(keys)
                created.add(p)
                touched.add(p)
        work: set[tuple[int, int]] = set()
        for leg in changed:
            lst = first.get(leg)
            if lst:
                a, b = divmod(leg, n)
                an = a * n
                live = [v for v in lst if an + v in queues]
                if len(live) != len(lst):
                    first[leg] = live
                for v in live:
                    if an + v not in created:
                        work.add((an + v, b))
            lst = second.get(leg)
            if lst:
                a, b = divmod(leg, n)
                live = [u for u in lst if u * n + b in queues]
                if len(live) != len(lst):
                    second[leg] = live
                for u in live:
                    if u * n + b not in created:
                        work.add((u * n + b, a))
        get = changed.get
        for qp, s in work:
            u, v = divmod(qp, n)
            l1, l2 = u * n + s, s * n + v
            new = prev[l1] + prev[l2]
            old = get(l1, prev[l1]) + get(l2, prev[l2])
            if old == new:
                continue
            c["key_increases"] += 1
            if queues[qp].change(s, old, new):
                touched.add(qp)
        return touched

    def _level_value(self, t: int, p: int) -> float:
        q = self.queues[t].get(p)
        return INF if q is None else q.value()

    def _retire(self, t: int, p: int) -> None:
        self.queues[t].pop(p, None)

    def _witness(self, t: int, p: int, value: float) -> int:
        return self.queues[t][p].witness(value)

    def queue_sizes(self) -> list[int]:
        return [len(q) for level in self.queues for q in level.values()]
