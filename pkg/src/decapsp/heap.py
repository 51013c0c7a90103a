"""Binary min-heap with item handles and increase-key."""
from __future__ import annotations

from typing import Hashable, Iterator


class IndexedMinHeap:
    """Min-heap over distinct items; ties broken by the item itself.

    Keys may be ``math.inf``; entries are never physically removed by key
    growth since the structures that use this only ever increase keys.
    """

    __slots__ = ("_keys", "_items", "_pos")

    def __init__(self) -> None:
        self._keys: list = []
        self._items: list = []
        self._pos: dict = {}

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item: Hashable) -> bool:
        return item in self._pos

    def __iter__(self) -> Iterator:
        return iter(list(self._items))

    def key(self, item):
        return self._keys[self._pos[item]]

    def push(self, item, key) -> None:
        if item in self._pos:
            raise KeyError(f"{item!r} already in heap")
        self._keys.append(key)
        self._items.append(item)
        self._pos[item] = len(self._items) - 1
        self._up(len(self._items) - 1)

    def update(self, item, key) -> None:
        i = self._pos[item]
        old = self._keys[i]
        self._keys[i] = key
        if (key, item) < (old, item):
            self._up(i)
        else:
            self._down(i)

    def peek(self):
        """Return ``(key, item)`` of the minimum element."""
        if not self._items:
            raise IndexError("peek from empty heap")
        return self._keys[0], self._items[0]

    def min_key(self, default=None):
        return self._keys[0] if self._keys else default

    def items(self) -> list[tuple]:
        return list(zip(self._items, self._keys))

    def _less(self, i: int, j: int) -> bool:
        ki, kj = self._keys[i], self._keys[j]
        return ki < kj or (ki == kj and self._items[i] < self._items[j])

    def _swap(self, i: int, j: int) -> None:
        keys, items, pos = self._keys, self._items, self._pos
        keys[i], keys[j] = keys[j], keys[i]
        items[i], items[j] = items[j], items[i]
        pos[items[i]] = i
        pos[items[j]] = j

    def _up(self, i: int) -> None:
        while i > 0:
            parent = (i - 1) >> 1
            if self._less(i, parent):
                self._swap(i, parent)
                i = parent
            else:
                break

    def _down(self, i: int) -> None:
        n = len(self._items)
        while True:
            left = 2 * i + 1
            if left >= n:
                return
            best = left
            right = left + 1
            if right < n and self._less(right, left):
                best = right
            if self._less(best, i):
                self._swap(i, best)
                i = best
            else:
                return
