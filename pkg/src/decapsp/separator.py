"""Growing vertex separators around a source, built from thin BFS layers."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import OracleContractViolation, SearchExhausted, WindowTooNarrow
from .graph import DecrementalGraph

FORWARD = "from_source"
BACKWARD = "to_source"


def bfs_layers(adj: list[list[int]], root: int, blocked=None, max_depth: int | None = None) -> Iterator[list[int]]:
    """Yield BFS layers from ``root`` over ``adj``, never entering blocked vertices."""
    seen = {root}
    layer = [root]
    depth = 0
    while layer:
        yield layer
        if max_depth is not None and depth >= max_depth:
            return
        nxt = []
        for w in layer:
            for x in adj[w]:
                if x not in seen and not (blocked is not None and blocked[x]):
                    seen.add(x)
                    nxt.append(x)
        layer = nxt
        depth += 1


def is_thin(size: int, closer: int, width: int, n: int) -> bool:
    """``size <= closer * lg n / width``, compared without dividing."""
    return size * width <= closer * math.log2(n)


def find_thin_layer(
    g: DecrementalGraph,
    root: int,
    window: tuple[int, int],
    orientation: str = FORWARD,
    removed: Iterable[int] = (),
) -> tuple[list[int], list[int]]:
    """First BFS layer in ``window`` that is thin relative to everything closer.

    Searches ``g`` minus ``removed`` (reversed for ``BACKWARD``).  Returns
    ``(layer, closer)`` where ``closer`` is the union of strictly closer layers.
    """
    d1, d2 = window
    width = d2 - d1 + 1
    n = g.n
    if n < 2 or width < math.log2(n):
        raise WindowTooNarrow(f"window width {width} < lg {n}")
    blocked = [False] * n
    for x in removed:
        blocked[x] = True
    if blocked[root]:
        raise SearchExhausted("root is removed")
    adj = g.out_adj if orientation == FORWARD else g.in_adj
    closer: list[int] = []
    for k, layer in enumerate(bfs_layers(adj, root, blocked, max_depth=d2)):
        if k >= d1:
            if is_thin(len(layer), len(closer), width, n):
                L = sorted(layer)
                assert len(L) * width <= len(closer) * math.log2(n)
                return L, sorted(closer)
        closer.extend(layer)
    raise SearchExhausted(f"no thin layer at depth {d1}..{d2} from {root}")


@dataclass
class _Side:
    """One budgeted BFS, advanced one completed layer at a time."""

    name: str
    adj: list[list[int]]
    lo: int
    hi: int
    width: int
    budget: list[int]

    def __post_init__(self):
        self.k = -1
        self.cost = 0  # units spent when the next layer is complete
        self.layer: list[int] = []
        self.closer = 0
        self.scanned: list[tuple[int, list[int]]] = []  # (cost once scanned, layer)
        self.done = False

    def start(self, root: int, blocked: list[bool]) -> None:
        self._it = bfs_layers(self.adj, root, blocked)
        self._advance()

    def _advance(self) -> None:
        if self.layer:
            self.closer += len(self.layer)
            self.cost += sum(self.budget[w] for w in self.layer)
            self.scanned.append((self.cost, self.layer))
        self.k += 1
        nxt = next(self._it, None)
        if nxt is None or self.k > self.hi:
            self.done = True
            self.layer = []
        else:
            self.layer = nxt

    def step(self) -> None:
        self._advance()


class Snapshot:
    """Immutable prefix of a separator's grow log."""

    __slots__ = ("_sep", "_len")

    def __init__(self, sep: "SeparatorState", length: int):
        self._sep = sep
        self._len = length

    def __len__(self) -> int:
        return self._len

    def __contains__(self, v: int) -> bool:
        pos = self._sep._pos.get(v)
        return pos is not None and pos < self._len

    def __iter__(self) -> Iterator[int]:
        log = self._sep.log
        return iter(log[: self._len])

    def as_set(self) -> frozenset[int]:
        return frozenset(self)


class SeparatorState:
    """Separator set around ``source`` for distance threshold ``d``.

    Fed vertices whose source-distance estimate reached ``(32/33) d``; each
    such vertex still reachable in G minus S is cut off by adding one thin
    BFS layer, found by two budgeted searches running in lockstep (from the
    source, and backwards from the vertex).

    ``d`` may be any positive rational.  Distances are integers, so the
    trigger threshold is ``min(ceil(32d/33), 2*floor(d) + 1 - floor(34d/33))``;
    the second term (which only differs for some non-integer d) is what
    guarantees that a pair first seen at distance in (d, 34d/33] is later
    split by an old separator vertex w with d(s,w) <= floor(d) and
    d(w,v) <= floor(d).

    When ``d`` is too small for the thin-layer guarantee (d <= 33 lg n) a
    window may contain no usable thin layer; the thinnest usable layer is
    then taken (or {v} itself) and ``fallbacks`` is incremented.  A layer is
    usable if it separates v and lies beyond 2d/3 from the source; if only
    {v} is left and it is not that far, ``floor_breaches`` is incremented.
    """

    def __init__(self, g: DecrementalGraph, source: int, d, *, check_contract: bool = True):
        d = Fraction(d)
        if d <= 0:
            raise ValueError("separator threshold must be positive")
        self.g = g
        self.source = source
        self.d = d
        n = g.n
        floor_d = math.floor(d)
        self.trigger_threshold = max(1, min(math.ceil(Fraction(32, 33) * d), 2 * floor_d + 1 - math.floor(Fraction(34, 33) * d)))
        # an estimate within 4/3 of the distance puts a triggered vertex at least this far
        self.contract_floor = Fraction(3, 4) * self.trigger_threshold
        self.layer_floor = math.floor(Fraction(2, 3) * d) + 1
        self.s_window = (math.floor(Fraction(2, 3) * d) + 1, math.floor(Fraction(23, 33) * d))
        self.v_window = (0, math.ceil(d / 33) - 1)
        self.check_contract = check_contract
        self.in_sep = [False] * n
        self.cut_off = [False] * n
        self.log: list[int] = []
        self._pos: dict[int, int] = {}
        self.budget = g.degree_budget()
        self.work = 0
        self.triggers = 0
        self.layers_added = 0
        self.fallbacks = 0
        self.floor_breaches = 0
        self.shared_edges = 0
        self.charged = 0
        self._dist_key: tuple[int, int] | None = None
        self._dist: list[float] = []

    @property
    def size(self) -> int:
        return len(self.log)

    def __contains__(self, v: int) -> bool:
        return self.in_sep[v]

    def snapshot(self) -> Snapshot:
        return Snapshot(self, len(self.log))

    def reachable(self) -> list[bool]:
        """Reachability from the source in G minus S."""
        n = self.g.n
        seen = [False] * n
        if self.in_sep[self.source]:
            return seen
        seen[self.source] = True
        queue = deque([self.source])
        adj, in_sep = self.g.out_adj, self.in_sep
        while queue:
            w = queue.popleft()
            for x in adj[w]:
                if not seen[x] and not in_sep[x]:
                    seen[x] = True
                    queue.append(x)
        return seen

    def _distances(self) -> list[float]:
        key = (self.g.clock, len(self.log))
        if self._dist_key == key:
            return self._dist
        n = self.g.n
        dist = [math.inf] * n
        dist[self.source] = 0
        queue = deque([self.source])
        adj, in_sep = self.g.out_adj, self.in_sep
        while queue:
            w = queue.popleft()
            for x in adj[w]:
                if dist[x] == math.inf and not in_sep[x]:
                    dist[x] = dist[w] + 1
                    queue.append(x)
        self._dist_key, self._dist = key, dist
        return dist

    def _refresh_cut_off(self, dist: list[float]) -> None:
        for v, dv in enumerate(dist):
            if dv == math.inf and not self.cut_off[v]:
                self.cut_off[v] = True
                self.charged += self.budget[v]

    def feed(self, changes: Iterable[tuple[int, float, float]]) -> list[int]:
        """Trigger every vertex whose estimate crossed the threshold; return added vertices."""
        t = self.trigger_threshold
        added: list[int] = []
        for v, old, new in sorted(changes):
            if old < t <= new:
                added.extend(self.on_trigger(v))
        return added

    def on_trigger(self, v: int) -> list[int]:
        if self.in_sep[v] or self.cut_off[v] or v == self.source:
            return []
        fresh = self._dist_key != (self.g.clock, len(self.log))
        dist = self._distances()
        if fresh:
            self._refresh_cut_off(dist)
        if dist[v] == math.inf:
            return []
        self.triggers += 1
        if self.check_contract and dist[v] < self.contract_floor:
            raise OracleContractViolation(
                f"trigger for {v} at distance {dist[v]} < {self.contract_floor}"
            )
        layer = self._lockstep(v, dist)
        for w in layer:
            self.in_sep[w] = True
            self._pos[w] = len(self.log)
            self.log.append(w)
        self.layers_added += 1
        self._refresh_cut_off(self._distances())
        return layer

    def _usable(self, side: "_Side", dist: list[float], dv: float) -> bool:
        if side.k >= dv:
            return False
        return all(dist[w] >= self.layer_floor for w in side.layer)

    def _lockstep(self, v: int, dist: list[float]) -> list[int]:
        n = self.g.n
        lo_s, hi_s = self.s_window
        lo_v, hi_v = self.v_window
        sides = (
            _Side("s", self.g.out_adj, lo_s, hi_s, max(hi_s - lo_s + 1, 1), self.budget),
            _Side("v", self.g.in_adj, lo_v, hi_v, max(hi_v - lo_v + 1, 1), self.budget),
        )
        sides[0].start(self.source, self.in_sep)
        sides[1].start(v, self.in_sep)
        best = None  # thinnest window layer seen, for the fallback
        winner = None
        while True:
            live = [sd for sd in sides if not sd.done]
            if not live:
                break
            sd = min(live, key=lambda x: x.cost)  # stable: s wins ties
            if sd.lo <= sd.k <= sd.hi and sd.layer and self._usable(sd, dist, dist[v]):
                size, closer = len(sd.layer), sd.closer
                if is_thin(size, closer, sd.width, n):
                    winner = sd
                    break
                ratio = math.inf if closer == 0 else size * sd.width / closer
                key = (ratio, size, sd.name, sd.k)
                if best is None or key < best[0]:
                    best = (key, sd, list(sd.layer))
            sd.step()
        if winner is not None:
            stop = winner.cost
            layer = sorted(winner.layer)
        else:
            self.fallbacks += 1
            if best is None:
                stop = max(sd.cost for sd in sides)
                layer = [v]
                if dist[v] < self.layer_floor:
                    self.floor_breaches += 1
            else:
                stop = best[1].cost
                layer = sorted(best[2])
        self.work += sum(min(sd.cost, stop) for sd in sides)
        self._count_shared(sides, stop)
        return layer

    def _count_shared(self, sides, stop: int) -> None:
        """Count edges scanned by both searches before the stopping cost."""
        s_side, v_side = sides
        fwd = {w for c, layer in s_side.scanned if c <= stop for w in layer}
        if not fwd:
            return
        for c, layer in v_side.scanned:
            if c > stop:
                break
            for b in layer:
                for a in self.g.in_adj[b]:
                    if a in fwd and not self.in_sep[a]:
                        self.shared_edges += 1
