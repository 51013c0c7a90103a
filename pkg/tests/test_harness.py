from __future__ import annotations

import pytest

from decapsp import harness
from decapsp.errors import BadParams, VerificationFailure
from decapsp.harness import OracleCache, RunMetrics, adversary_step, run
from decapsp.trace import DeletionTrace, lower_bound, random_trace


def test_exact_on_lower_bound_family():
    m = run("exact", lower_bound(7), verify=True)
    assert m.verdict == "pass"
    assert m.matrix_changes == 19  # brute-force recount, frozen
    assert m.checked > 0


def test_every_structure_passes_queries():
    tr = random_trace(15, 40, 2, queries=True)
    for name in harness.STRUCTURES:
        m = run(name, tr, verify=True, stride=0)
        assert m.verdict == "pass" and m.answers


def test_approx_det_at_half_eps():
    m = run("approx_det", random_trace(40, 120, 5), eps=0.5, verify=True, d_threshold=3)
    assert m.verdict == "pass" and 1.0 <= m.max_stretch <= 1.5


def test_rand_document_is_reproducible():
    tr = random_trace(20, 60, 9)
    docs = [run("approx_rand", tr, seed=4, verify=True, d_threshold=2, p=0.3).document(timing=False) for _ in range(2)]
    assert docs[0] == docs[1]
    assert "verify.verdict=pass" in docs[0]


def test_document_keys_are_dotted():
    doc = run("exact", lower_bound(5), verify=True).document()
    keys = [line.split("=", 1)[0] for line in doc.splitlines()]
    assert "timing.total_s" in keys and "run.digest" in keys
    assert all("." in k for k in keys if k != "structure")


def test_path_cutter_on_a_path():
    tr = DeletionTrace(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    for name in ("exact", "approx_det", "es_baseline"):
        m = run(name, tr, adversary="path_cutter", verify=True)
        assert m.deletions == [(0, 1)]
    with pytest.raises(BadParams):
        run("approx_rand", tr, adversary="path_cutter")


def test_greedy_pair_deletes_until_empty():
    tr = random_trace(10, 25, 1)
    m = run("exact", tr, adversary="greedy_pair", verify=True)
    assert len(m.deletions) <= tr.m
    orders = {tuple(run("approx_det", tr, eps=e, adversary="greedy_pair", d_threshold=1).deletions) for e in (0.1, 0.5)}
    assert all(orders)


def test_random_adversary_is_seeded():
    tr = random_trace(10, 25, 1)
    a = run("es_baseline", tr, adversary="random", seed=3).deletions
    b = run("es_baseline", tr, adversary="random", seed=3).deletions
    c = run("es_baseline", tr, adversary="random", seed=4).deletions
    assert a == b and sorted(a) == sorted(c) == sorted(tr.edges)


def test_unknown_names():
    with pytest.raises(BadParams):
        run("nope", lower_bound(5))
    with pytest.raises(BadParams):
        run("exact", lower_bound(5), adversary="nope")


class _Lying:
    def __init__(self, inner):
        self.inner = inner

    def query(self, u, v):
        return self.inner.query(u, v)

    def matrix(self):
        mat = self.inner.matrix()
        if self.inner.g.clock >= 2:
            mat[0][1] += 1
        return mat

    def metrics(self):
        return self.inner.metrics()


def test_failure_is_reported(monkeypatch):
    real = harness.build_structure
    monkeypatch.setattr(harness, "build_structure", lambda *a, **k: _Lying(real(*a, **k)))
    tr = lower_bound(7)
    with pytest.raises(VerificationFailure) as info:
        run("exact", tr, verify=True)
    f = info.value
    assert f.clock == 2 and (f.u, f.v) == (0, 1)
    assert info.value.metrics.verdict == "fail"
    assert "verify.first_failure=clock=2 u=0 v=1" in info.value.metrics.document()


def test_oracle_cache_shares_prefixes():
    tr = random_trace(12, 30, 4)
    cache = OracleCache()
    run("exact", tr, verify=True, oracle_cache=cache)
    node = cache.root(tr.n, tr.edges)
    assert node[0] is not None
    for e in tr.deletions():
        node = node[1][e]
        assert node[0] is not None


def test_record_matrices():
    tr = lower_bound(5)
    m = run("exact", tr, record_matrices=True)
    assert len(m.answers) == 25 * (len(tr.deletions()) + 1)
    assert isinstance(m, RunMetrics) and m.verdict == "unverified"
