"""Deterministic exact decremental all-pairs shortest paths."""
from __future__ import annotations

from .graph import DecrementalGraph
from .queues import TwoHopQueue
from .scales import EXACT, build_ladder
from .snapshot_levels import SnapshotQueueLevels


class ExactApsp(SnapshotQueueLevels):
    """Exact distances under edge deletions.

    Distances up to ``floor(D_f)`` (the first scale at or above
    ``small_cutoff``, default ceil(33 lg n)) come from bounded ES-trees.  Each
    higher scale i keeps, for every source u, a separator S_i(u) and for
    every pair whose distance passed floor(D_i) a min-queue over the frozen
    separator with keys d(u,s) + d(s,v).

    ``small_cutoff`` may be lowered to exercise the scale levels on graphs
    far smaller than 33 lg n would allow.
    """

    name = "exact"

    def __init__(self, g: DecrementalGraph, *, small_cutoff: int | None = None, subscribe: bool = True, check_contract: bool = True):
        ladder = build_ladder(max(g.n, 2), None, EXACT, small_cutoff=small_cutoff)
        super().__init__(g, ladder, ladder.small_cutoff, subscribe=subscribe, check_contract=check_contract)

    def _snapshot_at(self, t: int) -> int:
        return self.ladder.scale_floor(self.levels[t])

    def _truncate_at(self, t: int) -> int:
        return self.ladder.scale_floor(self.levels[t] + 1)

    def _make_queue(self, t: int, keys):
        return TwoHopQueue(keys)
