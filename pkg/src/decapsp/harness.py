"""Replay traces against a structure, optionally under an adaptive adversary, and verify."""
from __future__ import annotations

import hashlib
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .approx import ApproxDetApsp
from .baseline import EsBaseline
from .errors import BadParams, NoEdgesLeft, VerificationFailure
from .exact import ExactApsp
from .graph import DecrementalGraph
from .oracle import recompute
from .randomized import RandApsp
from .trace import DeletionTrace

INF = math.inf
STRUCTURES = ("exact", "approx_det", "approx_rand", "es_baseline")
ADVERSARIES = ("random", "greedy_pair", "path_cutter")
EXACT_STRUCTURES = ("exact", "es_baseline")
SLACK = 1 + 2.0**-40


def build_structure(name: str, g: DecrementalGraph, *, eps: float = 0.25, seed: int = 0, **overrides):
    """Instantiate a structure by name; ``overrides`` go to its constructor."""
    if name == "exact":
        return ExactApsp(g, **overrides)
    if name == "approx_det":
        return ApproxDetApsp(g, eps, **overrides)
    if name == "approx_rand":
        return RandApsp(g, eps, seed, **overrides)
    if name == "es_baseline":
        return EsBaseline(g, **overrides)
    raise BadParams(f"unknown structure {name!r}; choose from {', '.join(STRUCTURES)}")


class OracleCache:
    """Oracle matrices memoized along deletion sequences (a trie keyed by deleted edge).

    Runs that replay the same prefix, e.g. one trace under many seeds, share
    every matrix already computed.
    """

    def __init__(self):
        self._roots: dict = {}

    def root(self, n: int, edges) -> list:
        key = (n, tuple(edges))
        node = self._roots.get(key)
        if node is None:
            node = self._roots[key] = [None, {}]
        return node

    @staticmethod
    def child(node: list, edge: tuple[int, int]) -> list:
        kid = node[1].get(edge)
        if kid is None:
            kid = node[1][edge] = [None, {}]
        return kid

    @staticmethod
    def matrix(node: list, g: DecrementalGraph) -> list[list[float]]:
        if node[0] is None:
            node[0] = recompute(g)
        return node[0]


@dataclass
class RunMetrics:
    structure: str
    n: int
    m: int
    eps: float
    seed: int
    adversary: str | None
    deletions: list[tuple[int, int]] = field(default_factory=list)
    answers: list[tuple[int, int, int, float]] = field(default_factory=list)
    matrix_changes: int = 0
    counters: dict[str, int] = field(default_factory=dict)
    max_stretch: float = 1.0
    checked: int = 0
    verdict: str = "unverified"
    failure: VerificationFailure | None = None
    event_seconds: list[float] = field(default_factory=list)

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr(self.deletions).encode())
        h.update(repr(self.answers).encode())
        return h.hexdigest()[:16]

    def items(self, timing: bool = True) -> list[tuple[str, object]]:
        out: list[tuple[str, object]] = [
            ("structure", self.structure),
            ("params.eps", self.eps),
            ("params.seed", self.seed),
            ("params.adversary", self.adversary or "none"),
            ("graph.n", self.n),
            ("graph.m", self.m),
            ("run.deletions", len(self.deletions)),
            ("run.answers", len(self.answers)),
            ("run.matrix_changes", self.matrix_changes),
            ("run.digest", self.digest()),
        ]
        out += [(f"counters.{k}", v) for k, v in sorted(self.counters.items())]
        out += [
            ("verify.verdict", self.verdict),
            ("verify.checked", self.checked),
            ("verify.max_stretch", repr(self.max_stretch)),
        ]
        if self.failure is not None:
            f = self.failure
            out.append(("verify.first_failure", f"clock={f.clock} u={f.u} v={f.v} got={f.got} want={f.want}"))
        if timing:
            ev = self.event_seconds
            out += [
                ("timing.total_s", f"{sum(ev):.6f}"),
                ("timing.max_event_s", f"{max(ev, default=0.0):.6f}"),
                ("timing.events", len(ev)),
            ]
        return out

    def document(self, timing: bool = True) -> str:
        """One ``key=value`` line per field, keys nested by dots."""
        return "".join(f"{k}={v}\n" for k, v in self.items(timing))


class _Checker:
    def __init__(self, metrics: RunMetrics, exact: bool, eps: float):
        self.metrics = metrics
        self.exact = exact
        self.bound = (1 + eps) * SLACK

    def pair(self, clock: int, u: int, v: int, got: float, want: float) -> None:
        m = self.metrics
        m.checked += 1
        if want == INF or want == 0:
            ok = got == want
        elif self.exact:
            ok = got == want
        else:
            ok = want <= got <= self.bound * want
            if ok:
                m.max_stretch = max(m.max_stretch, got / want)
        if not ok:
            fail = VerificationFailure(clock, u, v, got, want)
            m.verdict = "fail"
            m.failure = fail
            fail.metrics = m
            raise fail

    def matrix(self, clock: int, got: list[list[float]], want: list[list[float]]) -> None:
        for u, (gr, wr) in enumerate(zip(got, want)):
            if gr != wr or not self.exact:
                for v in range(len(gr)):
                    self.pair(clock, u, v, gr[v], wr[v])
            else:
                self.metrics.checked += len(gr)


def _random_edge(g: DecrementalGraph, rng: random.Random) -> tuple[int, int]:
    return rng.choice(g.edges())


def _greedy_pair_edge(g: DecrementalGraph, structure, dist: list[list[float]]) -> tuple[int, int]:
    """First edge of a true shortest path for the pair with the largest finite estimate."""
    best, pick = -1.0, None
    for u, row in enumerate(structure.matrix()):
        for v, e in enumerate(row):
            if u != v and e != INF and e > best:
                best, pick = e, (u, v)
    if pick is None:
        raise NoEdgesLeft("no finite pair left")
    u, v = pick
    target = dist[u][v] - 1
    for w in sorted(g.out_adj[u]):
        if dist[w][v] == target:
            return (u, w)
    raise AssertionError("oracle distance inconsistent with graph")


def adversary_step(strategy: str, g: DecrementalGraph, structure, *, rng: random.Random,
                   oracle: Callable[[], list[list[float]]], pair: tuple[int, int] | None = None):
    """Next edge to delete, or ``None`` when a path_cutter target is disconnected."""
    if g.m == 0:
        raise NoEdgesLeft("graph has no edges")
    if strategy == "random":
        return _random_edge(g, rng)
    if strategy == "greedy_pair":
        return _greedy_pair_edge(g, structure, oracle())
    if strategy == "path_cutter":
        u, v = pair
        if structure.query(u, v) == INF:
            return None
        path = structure.report_path(u, v)
        return (path[0], path[1])
    raise BadParams(f"unknown adversary {strategy!r}; choose from {', '.join(ADVERSARIES)}")


def run(
    structure: str,
    trace: DeletionTrace,
    *,
    eps: float = 0.25,
    seed: int = 0,
    verify: bool = False,
    stride: int = 1,
    adversary: str | None = None,
    pair: tuple[int, int] | None = None,
    oracle_cache: OracleCache | None = None,
    record_matrices: bool = False,
    on_build: Callable[[object], None] | None = None,
    **overrides,
) -> RunMetrics:
    """Replay ``trace`` on a fresh structure and collect metrics.

    With ``verify``, every query is checked against the oracle, as is the full
    matrix at clock 0 and every ``stride`` deletions (``stride=0``: queries
    only).  A failed check raises :class:`VerificationFailure` carrying the
    partial metrics.  With ``adversary``, the trace's events are ignored and
    deletions are chosen online until the graph is empty (or, for
    path_cutter, until ``pair`` is disconnected).  ``record_matrices`` stores
    the full matrix after every deletion in ``answers``.
    """
    trace.validate()
    if adversary is not None and adversary not in ADVERSARIES:
        raise BadParams(f"unknown adversary {adversary!r}")
    if adversary == "path_cutter":
        if structure == "approx_rand":
            raise BadParams("path_cutter needs a structure with path reporting")
        if structure == "approx_det":
            overrides.setdefault("keep_members", True)
        if pair is None:
            pair = (0, trace.n - 1)
    g = DecrementalGraph(trace.n, trace.edges)
    ds = build_structure(structure, g, eps=eps, seed=seed, **overrides)
    if on_build is not None:
        on_build(ds)
    metrics = RunMetrics(structure, trace.n, trace.m, eps, seed, adversary)
    checker = _Checker(metrics, structure in EXACT_STRUCTURES, eps)
    cache = oracle_cache if oracle_cache is not None else OracleCache()
    node = cache.root(trace.n, trace.edges)

    def oracle() -> list[list[float]]:
        return cache.matrix(node, g)

    def record_all() -> None:
        for u, row in enumerate(ds.matrix()):
            metrics.answers += [(g.clock, u, v, x) for v, x in enumerate(row)]

    def delete(a: int, b: int) -> None:
        nonlocal node
        t0 = time.perf_counter()
        changes = g.delete_edge(a, b)[0]
        metrics.event_seconds.append(time.perf_counter() - t0)
        metrics.deletions.append((a, b))
        metrics.matrix_changes += sum(1 for c in changes if c[2] != c[3])
        node = cache.child(node, (a, b))
        if verify and stride and g.clock % stride == 0:
            checker.matrix(g.clock, ds.matrix(), oracle())
        if record_matrices:
            record_all()

    if verify and stride:
        checker.matrix(0, ds.matrix(), oracle())
    if record_matrices:
        record_all()
    if adversary is None:
        for ev in trace.events:
            if ev[0] == "D":
                delete(ev[1], ev[2])
                continue
            t0 = time.perf_counter()
            if ev[0] == "Q":
                got = ds.query(ev[1], ev[2])
                metrics.event_seconds.append(time.perf_counter() - t0)
                metrics.answers.append((g.clock, ev[1], ev[2], got))
                if verify:
                    checker.pair(g.clock, ev[1], ev[2], got, oracle()[ev[1]][ev[2]])
            else:
                mat = ds.matrix()
                metrics.event_seconds.append(time.perf_counter() - t0)
                for u, row in enumerate(mat):
                    metrics.answers += [(g.clock, u, v, x) for v, x in enumerate(row)]
                if verify:
                    checker.matrix(g.clock, mat, oracle())
    else:
        rng = random.Random(seed)
        while True:
            try:
                edge = adversary_step(adversary, g, ds, rng=rng, oracle=oracle, pair=pair)
            except NoEdgesLeft:
                break
            if edge is None:
                break
            delete(*edge)
    metrics.counters = dict(ds.metrics())
    if verify:
        metrics.verdict = "pass"
    return metrics
