"""Witness queues for the two-hop distance certificates."""
from __future__ import annotations

import math
from bisect import bisect_left

from .heap import IndexedMinHeap

INF = math.inf


class TwoHopQueue:
    """Exact min-queue over witnesses keyed by d(u,s) + d(s,v); keys only grow."""

    __slots__ = ("heap",)

    def __init__(self, keys: dict[int, float]):
        self.heap = IndexedMinHeap()
        for s in sorted(keys):
            self.heap.push(s, keys[s])

    def __len__(self) -> int:
        return len(self.heap)

    def change(self, s: int, old: float, new: float) -> bool:
        if self.heap.key(s) == new:
            return False
        self.heap.update(s, new)
        return True

    def value(self) -> float:
        return self.heap.min_key(INF)

    def witness(self, value: float) -> int:
        key, s = self.heap.peek()
        assert key == value
        return s


class CountingQueue:
    """Counts witnesses under each of a fixed ladder of thresholds.

    ``thresholds`` is strictly increasing.  A witness with key ``k`` counts
    toward every threshold ``>= k``; ``hist[j]`` holds the witnesses whose
    smallest qualifying threshold is ``thresholds[j]``.  The reported value is
    the smallest threshold with a positive count, or ``inf``.  Since keys only
    grow, that index only moves right.  Witnesses above the last threshold
    are dropped for good.  With ``keep_members`` the surviving keys are kept
    so a witness can be produced for path reporting.
    """

    __slots__ = ("thresholds", "hist", "lo", "keys")

    def __init__(self, thresholds: list[int], keys: dict[int, float], keep_members: bool = False):
        self.thresholds = thresholds
        self.hist = [0] * len(thresholds)
        self.keys: dict[int, float] | None = {} if keep_members else None
        top = thresholds[-1]
        for s, k in keys.items():
            if k <= top:
                self.hist[bisect_left(thresholds, k)] += 1
                if self.keys is not None:
                    self.keys[s] = k
        self.lo = 0
        self._settle()

    def _settle(self) -> None:
        hist, lo = self.hist, self.lo
        while lo < len(hist) and hist[lo] == 0:
            lo += 1
        self.lo = lo

    def count(self, j: int) -> int:
        """Number of witnesses with key <= thresholds[j]."""
        return sum(self.hist[: j + 1])

    def __len__(self) -> int:
        return sum(self.hist)

    def change(self, s: int, old: float, new: float) -> bool:
        ts = self.thresholds
        if old > ts[-1]:
            return False
        jo = bisect_left(ts, old)
        jn = bisect_left(ts, new)
        if jo == jn:
            if self.keys is not None:
                self.keys[s] = new
            return False
        self.hist[jo] -= 1
        if jn < len(ts):
            self.hist[jn] += 1
            if self.keys is not None:
                self.keys[s] = new
        elif self.keys is not None:
            del self.keys[s]
        if jo == self.lo and self.hist[jo] == 0:
            self._settle()
            return True
        return False

    def value(self) -> float:
        return self.thresholds[self.lo] if self.lo < len(self.thresholds) else INF

    def witness(self, value: float) -> int:
        if self.keys is None:
            raise RuntimeError("path reporting needs keep_members=True")
        return min((k, s) for s, k in self.keys.items() if k <= value)[1]
