"""Deletion traces: text format and generators."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import BadParams

Event = tuple  # ("D", u, v) | ("Q", u, v) | ("QA",)


@dataclass
class DeletionTrace:
    n: int
    edges: list[tuple[int, int]]
    events: list[Event] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.edges)

    def deletions(self) -> list[tuple[int, int]]:
        return [(e[1], e[2]) for e in self.events if e[0] == "D"]

    def serialize(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"E {a} {b}" for a, b in self.edges]
        for ev in self.events:
            lines.append(ev[0] if ev[0] == "QA" else f"{ev[0]} {ev[1]} {ev[2]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "DeletionTrace":
        rows = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                rows.append((lineno, line.split()))
        if not rows:
            raise BadParams("empty trace")
        lineno, head = rows[0]
        try:
            n, m = int(head[0]), int(head[1])
        except (ValueError, IndexError):
            raise BadParams(f"line {lineno}: expected 'n m' header") from None
        if len(head) != 2:
            raise BadParams(f"line {lineno}: expected 'n m' header")
        edges: list[tuple[int, int]] = []
        events: list[Event] = []
        for lineno, tok in rows[1:]:
            kind = tok[0]
            try:
                if kind == "E" and len(tok) == 3:
                    if events:
                        raise BadParams(f"line {lineno}: edge after events")
                    edges.append((int(tok[1]), int(tok[2])))
                elif kind in ("D", "Q") and len(tok) == 3:
                    events.append((kind, int(tok[1]), int(tok[2])))
                elif kind == "QA" and len(tok) == 1:
                    events.append(("QA",))
                else:
                    raise BadParams(f"line {lineno}: cannot parse {' '.join(tok)!r}")
            except ValueError:
                raise BadParams(f"line {lineno}: bad integer") from None
        if len(edges) != m:
            raise BadParams(f"header says {m} edges, found {len(edges)}")
        return cls(n, edges, events)

    def validate(self) -> None:
        """Check that every deletion names an edge present at that point."""
        live = set()
        for a, b in self.edges:
            if not (0 <= a < self.n and 0 <= b < self.n) or a == b or (a, b) in live:
                raise BadParams(f"bad initial edge ({a},{b})")
            live.add((a, b))
        for ev in self.events:
            if ev[0] == "D":
                if (ev[1], ev[2]) not in live:
                    raise BadParams(f"deletion of absent edge ({ev[1]},{ev[2]})")
                live.discard((ev[1], ev[2]))
            elif ev[0] == "Q" and not (0 <= ev[1] < self.n and 0 <= ev[2] < self.n):
                raise BadParams(f"query out of range {ev}")


def lower_bound(n: int, extra: int = 0, seed: int = 0) -> DeletionTrace:
    """Path 0->1->...->n-1 plus skip edges (k, k+2) for even k, deleted in order.

    With ``extra > 0``, that many further random edges are added and deleted
    before the skip edges.
    """
    if n < 3 or n % 2 == 0:
        raise BadParams("lower_bound needs odd n >= 3")
    path = [(k, k + 1) for k in range(n - 1)]
    skips = [(k, k + 2) for k in range(0, n - 2, 2)]
    base = set(path) | set(skips)
    room = n * (n - 1) - len(base)
    if extra < 0 or extra > room:
        raise BadParams(f"extra={extra} outside [0, {room}]")
    rng = random.Random(seed)
    added: list[tuple[int, int]] = []
    taken = set(base)
    while len(added) < extra:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b and (a, b) not in taken:
            taken.add((a, b))
            added.append((a, b))
    edges = path + skips + added
    events = [("D", a, b) for a, b in added] + [("D", a, b) for a, b in skips]
    return DeletionTrace(n, edges, events)


def random_trace(n: int, m: int, seed: int, *, queries: bool = False) -> DeletionTrace:
    """Uniform random digraph with m edges, then deletion of every edge in random order."""
    if n < 1 or m < 0 or m > n * (n - 1):
        raise BadParams(f"cannot place m={m} edges on n={n} vertices")
    rng = random.Random(seed)
    if m > n * (n - 1) // 2:
        pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
        edges = rng.sample(pairs, m)
    else:
        chosen: set[tuple[int, int]] = set()
        edges = []
        while len(edges) < m:
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b and (a, b) not in chosen:
                chosen.add((a, b))
                edges.append((a, b))
    order = edges[:]
    rng.shuffle(order)
    events: list[Event] = []
    for a, b in order:
        events.append(("D", a, b))
        if queries:
            events.append(("Q", rng.randrange(n), rng.randrange(n)))
    return DeletionTrace(n, edges, events)


def layered_trace(layers: int, width: int, p: float, seed: int) -> DeletionTrace:
    """Layered random digraph (edges between consecutive layers with prob p).

    Each vertex keeps at least one edge to the next layer so depth is
    ``layers - 1``; deletions remove every edge in random order.
    """
    if layers < 2 or width < 1 or not (0 <= p <= 1):
        raise BadParams("layered needs layers >= 2, width >= 1, 0 <= p <= 1")
    rng = random.Random(seed)
    n = layers * width
    edges = []
    for li in range(layers - 1):
        for a in range(li * width, (li + 1) * width):
            nxt = range((li + 1) * width, (li + 2) * width)
            picks = [b for b in nxt if rng.random() < p]
            if not picks:
                picks = [rng.choice(list(nxt))]
            edges += [(a, b) for b in picks]
    order = edges[:]
    rng.shuffle(order)
    return DeletionTrace(n, edges, [("D", a, b) for a, b in order])


GENERATORS = {"lower_bound": lower_bound, "random": random_trace, "layered": layered_trace}
