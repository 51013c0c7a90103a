"""Subset sampling by repeatedly drawing the first hit of a geometric law.

Sampling each of n slots independently with probability p is equivalent to
drawing the index of the first hit (Pr[k] = (1-p)**(k-1) * p, or no hit
with probability (1-p)**n) and recursing on the slots after it.  The first
hit is located by bisection over window masses, so the cost is
O(log n) per hit instead of O(n) coin flips.
"""
from __future__ import annotations

import math
from typing import Protocol

from .errors import ProbabilityOutOfRange


class UniformSource(Protocol):
    def random(self) -> float: ...


class GeometricTable:
    """Masses of the first-hit law for windows up to ``n_max``.

    ``powers[k] = (1-p)**k``.  The mass of indices ``i1..i2`` is
    ``powers[i1-1] * (1 - (1-p)**(i2-i1+1))``, evaluated with ``expm1`` so
    tiny p does not cancel catastrophically.  That is O(n_max) memory for
    O(1) window masses.
    """

    def __init__(self, p: float, n_max: int):
        if not (0.0 <= p <= 1.0) or math.isnan(p):
            raise ProbabilityOutOfRange(f"p={p} outside [0, 1]")
        if n_max < 0:
            raise ValueError("n_max must be >= 0")
        self.p = float(p)
        self.n_max = n_max
        if p == 0.0:
            self._log_q = 0.0
            self.powers = [1.0] * (n_max + 1)
        elif p == 1.0:
            self._log_q = -math.inf
            self.powers = [1.0] + [0.0] * n_max
        else:
            self._log_q = math.log1p(-p)
            self.powers = [math.exp(k * self._log_q) for k in range(n_max + 1)]

    def point(self, k: int) -> float:
        """Pr[first hit = k] for k >= 1."""
        return self.powers[k - 1] * self.p

    def tail(self, window: int) -> float:
        """Pr[no hit among the first ``window`` slots]."""
        return self.powers[window]

    def mass(self, i1: int, i2: int, window: int) -> float:
        """Pr[first hit in i1..i2], where index ``window + 1`` stands for "no hit"."""
        if i1 > i2:
            return 0.0
        if i2 > window:
            return self.powers[i1 - 1]
        length = i2 - i1 + 1
        if self.p == 1.0:
            return 1.0 if i1 == 1 else 0.0
        if self.p == 0.0:
            return 0.0
        return self.powers[i1 - 1] * -math.expm1(length * self._log_q)


def build_table(p: float, n_max: int) -> GeometricTable:
    return GeometricTable(p, n_max)


def sample_first_index(t: GeometricTable, window: int, rng: UniformSource) -> int | None:
    """Index in [1, window] of the first hit, or None; O(log window) bisections."""
    if window > t.n_max:
        raise ValueError(f"window {window} exceeds table size {t.n_max}")
    if window <= 0 or t.p == 0.0:
        return None
    if t.p == 1.0:
        return 1
    lo, hi = 1, window + 1
    while lo < hi:
        mid = (lo + hi) // 2
        left = t.mass(lo, mid, window)
        # the current interval's mass is the exact residual pw[lo-1] when it
        # reaches the tail, which avoids drift for tiny p
        total = t.mass(lo, hi, window)
        if total <= 0.0 or rng.random() * total < left:
            hi = mid
        else:
            lo = mid + 1
    return None if lo == window + 1 else lo


def sample_subset(t: GeometricTable, n: int, rng: UniformSource) -> list[int]:
    """Sorted 1-based indices of slots hit by independent Bernoulli(p) trials."""
    if n > t.n_max:
        raise ValueError(f"n={n} exceeds table size {t.n_max}")
    out: list[int] = []
    offset = 0
    while offset < n:
        k = sample_first_index(t, n - offset, rng)
        if k is None:
            break
        offset += k
        out.append(offset)
    return out
