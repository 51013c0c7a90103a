"""Distance-scale ladder and exact integer thresholds.

Every threshold the APSP structures compare against is of the form
rho**(k/c) for an integer k, so they are all served from one table of
exact floors.  floor(rho**(k/c)) is the largest x with x**c * q**k <= p**k
where rho = p/q.  A double-precision estimate is accepted only when it sits
far from an integer; anything close is settled with integer arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import EpsilonOutOfRange, OutOfRange

EXACT = "exact"
APPROX_DET = "approx_det"
APPROX_RAND = "approx_rand"
VARIANTS = (EXACT, APPROX_DET, APPROX_RAND)

RHO_DET = Fraction(34, 33)
RHO_RAND = Fraction(67, 66)
EPS_CAP = Fraction(1, 3)
# generous bound on k; thresholds above it are never needed for n < 10**6
_K_LIMIT = 10**7


@lru_cache(maxsize=None)
def floor_rho_power(p: int, q: int, k: int, c: int) -> int:
    """Exact ``floor((p/q) ** (k/c))`` for p > q > 0, k >= 0, c >= 1."""
    if k == 0:
        return 1
    approx = math.exp(k / c * math.log(p / q))
    x = max(1, int(approx))
    # double precision is good to ~1e-12 relative here; only settle ties exactly
    if approx < 2.0**40 and 1e-7 * approx < approx - x < 1 - 1e-7 * approx:
        return x
    # x**c <= a/b  <=>  x**c <= a // b for integer x
    return integer_root(p**k // q**k, c)


def integer_root(value: int, c: int) -> int:
    """Largest x >= 0 with x**c <= value."""
    if value < 2 or c == 1:
        return value
    x = 1 << -(-value.bit_length() // c)  # an upper bound
    while True:
        y = ((c - 1) * x + value // x ** (c - 1)) // c
        if y >= x:
            break
        x = y
    while x**c > value:
        x -= 1
    while (x + 1) ** c <= value:
        x += 1
    return x


@lru_cache(maxsize=None)
def floor_log(p: int, q: int, n: int) -> int:
    """Largest i with (p/q)**i <= n."""
    i = 0
    pi, qi = p, q
    while pi <= n * qi:
        i += 1
        pi *= p
        qi *= q
    return i


@lru_cache(maxsize=None)
def floor_eps_scale(p: int, q: int, i: int, c: int) -> int:
    """Exact ``floor((rho**(1/c) - 1) * rho**i)``.

    r is feasible iff (r*q**i + p**i)**c * q <= p**(i*c + 1).
    """
    qi, pi_ = q**i, p**i
    rhs = p ** (i * c + 1)
    # feasibility is monotone in r: bisect between 0 and a doubling bound
    lo, hi = 0, 1
    while (hi * qi + pi_) ** c * q <= rhs:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if (mid * qi + pi_) ** c * q <= rhs:
            lo = mid
        else:
            hi = mid
    return lo


def lg(n: int) -> float:
    return math.log2(n)


@dataclass(frozen=True)
class ScaleLadder:
    variant: str
    n: int
    rho: Fraction
    c: int
    i_max: int
    eps: float | None
    eps_prime: float | None
    small_cutoff: int
    _extra: dict = field(default_factory=dict, compare=False, repr=False)

    def threshold(self, k: int) -> int:
        """``floor(rho ** (k / c))``."""
        if k < 0 or k > _K_LIMIT:
            raise OutOfRange(f"threshold exponent {k} outside table")
        return floor_rho_power(self.rho.numerator, self.rho.denominator, k, self.c)

    def floors(self, k_hi: int) -> list[int]:
        return [self.threshold(k) for k in range(k_hi + 1)]

    def scale_floor(self, i: int) -> int:
        """``floor(D_i)``."""
        return self.threshold(i * self.c)

    def radius(self, i: int) -> int:
        """``floor(eps' * D_i)``."""
        return floor_eps_scale(self.rho.numerator, self.rho.denominator, i, self.c)

    def level_of(self, dist: int) -> int:
        """Level i with dist in (floor(D_i), floor(D_{i+1})]; level 0 also owns dist=1."""
        if dist < 1:
            raise OutOfRange("distance must be >= 1")
        lo, hi = 0, self.i_max + 1
        while self.scale_floor(hi + 1) < dist:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if self.scale_floor(mid + 1) >= dist:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def first_level(self, cutoff: int) -> int:
        """Smallest i with D_i >= cutoff."""
        p, q = self.rho.numerator, self.rho.denominator
        i = 0
        pi, qi = 1, 1
        while pi < cutoff * qi:
            i += 1
            pi *= p
            qi *= q
        return i


def _target_eps_prime(eps: float, i_max: int, variant: str) -> float:
    t = math.log1p(eps) / max(i_max, 1)
    return t / 2 if variant == APPROX_RAND else t


def subdivisions_for(rho: Fraction, target: float) -> int:
    """Smallest c with rho**(1/c) - 1 <= target."""
    ratio = math.log(rho) / math.log1p(target)
    c = max(1, math.ceil(ratio - 1e-9))
    return c


def build_ladder(n: int, eps: float | None, variant: str, *, small_cutoff: int | None = None) -> ScaleLadder:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if n < 2:
        raise OutOfRange("ladder needs n >= 2")
    rho = RHO_RAND if variant == APPROX_RAND else RHO_DET
    p, q = rho.numerator, rho.denominator
    i_max = floor_log(p, q, n)
    cutoff = math.ceil(33 * lg(n)) if small_cutoff is None else int(small_cutoff)
    if cutoff < 1:
        raise OutOfRange("small cutoff must be >= 1")
    if variant == EXACT:
        return ScaleLadder(EXACT, n, rho, 1, i_max, eps, None, cutoff)
    if eps is None or not (eps > 0) or math.isinf(eps):
        raise EpsilonOutOfRange(f"eps must be a positive real, got {eps}")
    # scales are built for at most 1/3 so estimates stay within 4/3 of the
    # distance, which the separators rely on; a larger eps is then met anyway
    c = subdivisions_for(rho, _target_eps_prime(min(float(eps), float(EPS_CAP)), i_max, variant))
    eps_prime = math.exp(math.log(rho) / c) - 1.0
    if variant == APPROX_RAND:
        # rho * (1 + eps') <= 34/33  <=>  p**(c+1) * 33**c <= q**(c+1) * 34**c
        assert p ** (c + 1) * 33**c <= q ** (c + 1) * 34**c, "rho(1+eps') exceeds 34/33"
    return ScaleLadder(variant, n, rho, c, i_max, float(eps), eps_prime, cutoff)
