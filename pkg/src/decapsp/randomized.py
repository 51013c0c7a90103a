"""Randomized (1+eps)-approximate decremental APSP with sampled separators.

Per scale i, sub-scale j and source u, only a random sample of the separator
S_i(u) is tracked for each target v.  When no sampled witness certifies v
any more, a small in-tree is grown into v over unmarked vertices and the
witnesses are recomputed once for the whole tree (Case 1: scan all of
S_i(u); Case 2: reuse the queues of the already marked leaves).  Outputs are
rounded to the sub-scale thresholds, so they never reveal which witnesses
were sampled; randomness only changes the amount of work.
"""
from __future__ import annotations

import math

import numpy as np

from .graph import DecrementalGraph
from .leveled import INF, LeveledApsp
from .sampler import GeometricTable, sample_subset
from .scales import APPROX_RAND, build_ladder
from .approx import clamp_threshold


def rand_threshold_formula(n: int, m: int, eps: float) -> int:
    """ceil(n^(2/3) lg n / (m^(1/3) eps)), before clamping."""
    if m <= 0:
        return n
    return math.ceil(n ** (2 / 3) * math.log2(n) / (m ** (1 / 3) * eps))


def sampling_probability(n: int, m: int, eps: float, d: int) -> float:
    """min(1, sqrt(m eps d) lg n / n)."""
    return min(1.0, math.sqrt(m * eps * d) * math.log2(n) / n)


class RandApsp(LeveledApsp):
    """(1+eps)-approximate distances, correct for every seed.

    ``d_threshold`` and ``p`` default to the balanced choices and can be
    overridden to exercise the sampled levels on small graphs.
    """

    name = "approx_rand"

    def __init__(
        self,
        g: DecrementalGraph,
        eps: float,
        seed: int = 0,
        *,
        d_threshold: int | None = None,
        p: float | None = None,
        subscribe: bool = True,
        check_contract: bool = True,
    ):
        n = max(g.n, 2)
        self.ladder = ladder = build_ladder(n, eps, APPROX_RAND)
        self.eps = eps
        self.seed = seed
        m = g.initial_m
        if d_threshold is None:
            d_threshold = clamp_threshold(rand_threshold_formula(n, m, eps), n)
        if d_threshold < 1:
            raise ValueError("d_threshold must be >= 1")
        self.d_threshold = d_threshold
        self.p = sampling_probability(n, m, eps, d_threshold) if p is None else float(p)
        self.table = GeometricTable(self.p, n)
        self.mark_sizes: list[int] = []
        self.first_mark_clock: dict[tuple[int, int], int] = {}
        super().__init__(g, ladder, d_threshold, subscribe=subscribe, check_contract=check_contract)

    # ladder hooks ------------------------------------------------------------
    def _base_depth(self, first: int) -> int:
        return self.ladder.threshold(first * self.ladder.c + 1)

    def _level_top(self, i: int) -> int:
        return self.ladder.threshold((i + 1) * self.ladder.c + 1)

    def _truncate_at(self, t: int) -> int:
        i, c = self.levels[t], self.ladder.c
        return self.ladder.threshold(i * (c + 2) + c + 1)

    def _setup_levels(self) -> None:
        lad, c = self.ladder, self.ladder.c
        self.activation: list[int] = []
        self.subscales: list[list[int]] = []
        self.key_threshold: list[dict[int, int]] = []
        self.radius: list[int] = []
        for i in self.levels:
            self.activation.append(lad.threshold(i * (c + 2)))
            js = [j for j in range(c + 2) if lad.threshold(i * c + j + 1) > lad.threshold(i * c + j)]
            self.subscales.append(js)
            self.key_threshold.append({j: lad.threshold(i * (c + 2) + j) for j in js})
            self.radius.append(lad.radius(i))
        L = len(self.levels)
        self.rq: list[dict[tuple[int, int], dict[int, float]]] = [{} for _ in range(L)]
        self.sampled: list[dict[tuple[int, int], list[int]]] = [{} for _ in range(L)]
        self.marks: list[dict[tuple[int, int], bytearray]] = [{} for _ in range(L)]
        self.first: list[dict[int, list[tuple[int, int]]]] = [{} for _ in range(L)]
        self.second: list[dict[int, list[tuple[int, int]]]] = [{} for _ in range(L)]

    def _rng(self, i: int, j: int, u: int, ordinal: int) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(np.random.SeedSequence([self.seed, i, j, u, ordinal])))

    def _marked(self, t: int, j: int, u: int) -> bytearray:
        key = (j, u)
        mk = self.marks[t].get(key)
        if mk is None:
            mk = self.marks[t][key] = bytearray(self.n)
        return mk

    def _enqueue(self, t: int, j: int, u: int, v: int, members, prev) -> dict[int, float]:
        """Install a fresh queue for (u, v) at sub-scale j holding ``members``."""
        n = self.n
        K = self.key_threshold[t][j]
        q: dict[int, float] = {}
        un = u * n
        first, second = self.first[t], self.second[t]
        for s in members:
            key = prev[un + s] + prev[s * n + v]
            if key <= K:
                q[s] = key
                if s != u:
                    first.setdefault(un + s, []).append((j, v))
                if s != v:
                    second.setdefault(s * n + v, []).append((j, u))
        self.rq[t][(j, un + v)] = q
        self.counters["queue_inserts"] += len(q)
        return q

    # level update ------------------------------------------------------------
    def _level_values(self, t, changed, new_sep, initial) -> set[int]:
        n = self.n
        i = self.levels[t]
        prev = self.tables[t]
        cur = self.tables[t + 1]
        A = self.activation[t]
        js = self.subscales[t]
        rq = self.rq[t]
        sampled = self.sampled[t]
        touched: set[int] = set()
        pending: set[tuple[int, int]] = set()
        live = (lambda p: True) if initial else (lambda p: cur[p] != INF)

        fresh: dict[tuple[int, int], list[int]] = {}
        for u, added in new_sep.items():
            sep = self.seps[t][u]
            for s in added:
                ordinal = sep._pos[s]
                for j in js:
                    for k in sample_subset(self.table, n, self._rng(i, j, u, ordinal)):
                        v = k - 1
                        if v == u:
                            continue
                        sampled.setdefault((j, u * n + v), []).append(s)
                        fresh.setdefault((j, u * n + v), []).append(s)
                        self.counters["samples"] += 1

        activated: set[int] = set()
        for p, old in changed.items():
            if old <= A < prev[p] and live(p):
                u, v = divmod(p, n)
                activated.add(p)
                for j in js:
                    if not self._marked(t, j, u)[v]:
                        self._enqueue(t, j, u, v, sampled.get((j, p), ()), prev)
                        pending.add((j, p))
                touched.add(p)

        first, second = self.first[t], self.second[t]
        for (j, p), ss in fresh.items():
            u, v = divmod(p, n)
            if p in activated or prev[p] <= A or self._marked(t, j, u)[v] or not live(p):
                continue
            q = rq.get((j, p))
            if q is None:
                continue
            K = self.key_threshold[t][j]
            for s in ss:
                key = prev[u * n + s] + prev[s * n + v]
                if key <= K and s not in q:
                    q[s] = key
                    if s != u:
                        first.setdefault(u * n + s, []).append((j, v))
                    if s != v:
                        second.setdefault(s * n + v, []).append((j, u))
                    self.counters["queue_inserts"] += 1
            touched.add(p)

        work: set[tuple[int, int, int]] = set()
        for leg in changed:
            a, b = divmod(leg, n)
            lst = first.get(leg)
            if lst:
                keep = [(j, v) for j, v in lst if b in rq.get((j, a * n + v), ())]
                if len(keep) != len(lst):
                    first[leg] = keep
                for j, v in keep:
                    work.add((j, a * n + v, b))
            lst = second.get(leg)
            if lst:
                keep = [(j, u) for j, u in lst if a in rq.get((j, u * n + b), ())]
                if len(keep) != len(lst):
                    second[leg] = keep
                for j, u in keep:
                    work.add((j, u * n + b, a))
        for j, p, s in work:
            q = rq[(j, p)]
            u, v = divmod(p, n)
            key = prev[u * n + s] + prev[s * n + v]
            if key == q[s]:
                continue
            self.counters["key_increases"] += 1
            if key > self.key_threshold[t][j]:
                del q[s]
                if not q:
                    touched.add(p)
                    pending.add((j, p))
            else:
                q[s] = key

        for j, p in sorted(pending):
            u, v = divmod(p, n)
            if rq.get((j, p)) or self._marked(t, j, u)[v] or prev[p] <= A or not live(p):
                continue
            touched.update(self.process_pair(t, j, u, v))
        return touched

    def process_pair(self, t: int, j: int, u: int, v: int) -> list[int]:
        """Grow an in-tree into v, rebuild the witness queues of its vertices, mark them."""
        n = self.n
        prev = self.tables[t]
        cur = self.tables[t + 1]
        marked = self._marked(t, j, u)
        r = self.radius[t]
        K = self.key_threshold[t][j]
        tree = [v]
        if r:
            in_adj = self.g.in_adj
            seen = {v}
            frontier = [v]
            for _ in range(r):
                nxt = []
                for y in frontier:
                    if marked[y]:
                        continue
                    for x in in_adj[y]:
                        self.counters["in_tree_edges"] += 1
                        if x not in seen:
                            seen.add(x)
                            tree.append(x)
                            nxt.append(x)
                frontier = nxt
                if not frontier:
                    break
        leaves = [x for x in tree if marked[x]]
        unmarked = len(tree) - len(leaves)
        un = u * n
        if unmarked > r:
            self.counters["case1"] += 1
            log = self.seps[t][u].log
            self.counters["case1_scanned"] += len(log)
            witnesses = [s for s in log if prev[un + s] + prev[s * n + v] <= K]
        else:
            self.counters["case2"] += 1
            pool = set()
            for x in leaves:
                pool.update(self.rq[t].get((j, un + x), ()))
            witnesses = sorted(s for s in pool if prev[un + s] + prev[s * n + v] <= K)
        touched = []
        for x in tree:
            if marked[x]:
                continue
            p = un + x
            if x != u and (cur[p] != INF or self._initializing):
                self._enqueue(t, j, u, x, witnesses, prev)
                touched.append(p)
            marked[x] = 1
            self.mark_sizes.append(len(witnesses))
            self.first_mark_clock.setdefault((u, x), self.clock)
        return touched

    def _level_value(self, t: int, p: int) -> float:
        rq = self.rq[t]
        kt = self.key_threshold[t]
        for j in self.subscales[t]:
            if rq.get((j, p)):
                return kt[j]
        return INF

    def _retire(self, t: int, p: int) -> None:
        rq = self.rq[t]
        for j in self.subscales[t]:
            rq.pop((j, p), None)

    def _run_level(self, t, changed, initial):
        self._initializing = initial
        return super()._run_level(t, changed, initial)

    def report_path(self, u: int, v: int):
        raise NotImplementedError("the randomized structure reports distances only")

    @property
    def first_event_clock(self) -> float:
        return min(self.first_mark_clock.values(), default=INF)

    def metrics(self) -> dict[str, int]:
        out = super().metrics()
        out["p_milli"] = round(self.p * 1000)
        out["marks"] = len(self.mark_sizes)
        out["mark_queue_total"] = sum(self.mark_sizes)
        return out
