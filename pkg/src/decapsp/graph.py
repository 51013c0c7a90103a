"""Directed unweighted graph that only ever loses edges."""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import DuplicateEdge, EdgeAbsent, SelfLoop, VertexOutOfRange

Edge = tuple[int, int]


class DecrementalGraph:
    """Adjacency-indexed digraph with a deletion clock.

    ``out_adj``/``in_adj`` are swap-remove lists (neighbor order is
    unspecified).  ``initial_out``/``initial_in`` freeze the adjacency of the
    initial graph; structures that need a stable scan order (ES-trees) walk
    those and test liveness with :meth:`has_edge`.
    """

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise VertexOutOfRange(f"negative vertex count {n}")
        self.n = n
        self.out_adj: list[list[int]] = [[] for _ in range(n)]
        self.in_adj: list[list[int]] = [[] for _ in range(n)]
        self._out_pos: dict[Edge, int] = {}
        self._in_pos: dict[Edge, int] = {}
        for a, b in edges:
            self._check_vertex(a)
            self._check_vertex(b)
            if a == b:
                raise SelfLoop(f"self-loop at {a}")
            if (a, b) in self._out_pos:
                raise DuplicateEdge(f"duplicate edge ({a},{b})")
            self._out_pos[(a, b)] = len(self.out_adj[a])
            self.out_adj[a].append(b)
            self._in_pos[(a, b)] = len(self.in_adj[b])
            self.in_adj[b].append(a)
        self.initial_m = len(self._out_pos)
        self.initial_out: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in self.out_adj)
        self.initial_in: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in self.in_adj)
        self.clock = 0
        self._subscribers: list[Callable[[Edge], object]] = []
        self._degree_budget: list[int] | None = None

    @classmethod
    def from_edge_list(cls, n: int, edges: Sequence[Edge]) -> "DecrementalGraph":
        return cls(n, edges)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise VertexOutOfRange(f"vertex {v} outside [0, {self.n})")

    @property
    def m(self) -> int:
        return len(self._out_pos)

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self._out_pos

    def edges(self) -> list[Edge]:
        return sorted(self._out_pos)

    def subscribe(self, callback: Callable[[Edge], object]) -> None:
        self._subscribers.append(callback)

    def delete_edge(self, a: int, b: int) -> list[object]:
        """Remove edge ``(a, b)``, bump the clock, notify subscribers in order."""
        e = (a, b)
        if e not in self._out_pos:
            raise EdgeAbsent(f"edge ({a},{b}) not present")
        _swap_remove(self.out_adj[a], self._out_pos, e, lambda x: (a, x))
        _swap_remove(self.in_adj[b], self._in_pos, e, lambda x: (x, b))
        self.clock += 1
        return [cb(e) for cb in self._subscribers]

    def degree_budget(self) -> list[int]:
        """Initial total degree rounded up to a positive multiple of ceil(m/n)."""
        if self._degree_budget is None:
            delta = max(1, -(-self.initial_m // max(self.n, 1)))
            self._degree_budget = [
                max(delta, -(-(len(self.initial_out[v]) + len(self.initial_in[v])) // delta) * delta)
                for v in range(self.n)
            ]
        return self._degree_budget

    def copy(self) -> "DecrementalGraph":
        g = DecrementalGraph(self.n, self.edges())
        return g


def _swap_remove(lst: list[int], pos: dict[Edge, int], e: Edge, key_of) -> None:
    i = pos.pop(e)
    last = lst.pop()
    if i < len(lst):
        lst[i] = last
        pos[key_of(last)] = i
