"""Deterministic (1+eps)-approximate decremental all-pairs shortest paths."""
from __future__ import annotations

import math

from .graph import DecrementalGraph
from .queues import CountingQueue
from .scales import APPROX_DET, build_ladder
from .snapshot_levels import SnapshotQueueLevels


def det_threshold_formula(n: int, m: int, eps: float) -> int:
    """ceil(n (lg n)^2 / (eps sqrt m)), before clamping."""
    if m <= 0:
        return n
    return math.ceil(n * math.log2(n) ** 2 / (eps * math.sqrt(m)))


def clamp_threshold(raw: int, n: int) -> int:
    """Clamp into [ceil(33 lg n), n]; the lower end wins when the range is empty."""
    lo = math.ceil(33 * math.log2(n))
    return max(lo, min(raw, n))


def hybrid_threshold_det(n: int, m: int, eps: float) -> int:
    return clamp_threshold(det_threshold_formula(n, m, eps), n)


class ApproxDetApsp(SnapshotQueueLevels):
    """Estimates within a (1+eps) factor of the distance, deterministically.

    Scale i rounds every two-hop certificate up to the next value of
    (1+eps')**i * D_i * (1+eps')**j, so each pair's queue only needs one
    counter per sub-scale j.  Pairs at distance at most ``d_threshold`` are
    served exactly by ES-trees.  ``keep_members`` retains the witnesses
    needed by :meth:`report_path`.
    """

    name = "approx_det"

    def __init__(
        self,
        g: DecrementalGraph,
        eps: float,
        *,
        d_threshold: int | None = None,
        keep_members: bool = False,
        subscribe: bool = True,
        check_contract: bool = True,
    ):
        n = max(g.n, 2)
        self.ladder = ladder = build_ladder(n, eps, APPROX_DET)
        self.eps = eps
        self.keep_members = keep_members
        if d_threshold is None:
            d_threshold = hybrid_threshold_det(n, g.initial_m, eps)
        if d_threshold < 1:
            raise ValueError("d_threshold must be >= 1")
        self.d_threshold = d_threshold
        super().__init__(g, ladder, d_threshold, subscribe=subscribe, check_contract=check_contract)

    def _setup_levels(self) -> None:
        lad, c = self.ladder, self.ladder.c
        self.key_thresholds = []
        for i in self.levels:
            ts = sorted({lad.threshold(i * (c + 1) + j) for j in range(c)})
            self.key_thresholds.append(ts)
        super()._setup_levels()

    def _snapshot_at(self, t: int) -> int:
        i, c = self.levels[t], self.ladder.c
        return self.ladder.threshold(i * (c + 1))

    def _truncate_at(self, t: int) -> int:
        i, c = self.levels[t], self.ladder.c
        return self.ladder.threshold(i + (i + 1) * c)

    def _make_queue(self, t: int, keys):
        return CountingQueue(self.key_thresholds[t], keys, self.keep_members)

    def report_path(self, u: int, v: int):
        if not self.keep_members and self.levels:
            raise RuntimeError("path reporting needs keep_members=True")
        return super().report_path(u, v)
