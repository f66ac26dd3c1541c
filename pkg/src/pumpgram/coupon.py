"""Expected time to observe every basic string (coupon collector).

Probabilities need not sum to one: the residual mass belongs to a sink
outcome that never has to be collected.
"""
from __future__ import annotations

import math
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

DEFAULT_CAP = 20


class CouponDomainError(ValueError):
    pass


class CouponCapacityError(ValueError):
    pass


def _check(probs: Sequence[float], cap: int) -> np.ndarray:
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1:
        raise CouponDomainError("probabilities must be a flat sequence")
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise CouponDomainError("probabilities must be finite and non-negative")
    if p.sum() > 1 + 1e-12:
        raise CouponDomainError(f"probabilities sum to {p.sum()} > 1")
    if len(p) > cap:
        raise CouponCapacityError(f"{len(p)} coupons exceeds the cap of {cap}")
    return p


def expected_collection_time(probs: Sequence[float], cap: int = DEFAULT_CAP) -> float:
    """E[T] by inclusion-exclusion over subsets of coupons.

    Uses E[T] = sum over non-empty J of (-1)^(|J|+1) / P_J, where P_J is
    the total probability of the coupons in J. This form stays valid when
    a sink outcome holds the residual mass.

    >>> expected_collection_time([0.5, 0.5])
    3.0
    """
    p = _check(probs, cap)
    n = len(p)
    if n == 0:
        return 0.0
    if np.any(p == 0):
        return math.inf
    # subset sums for every mask, built by doubling
    sums = np.zeros(1, dtype=float)
    sizes = np.zeros(1, dtype=np.int64)
    for x in p:
        sums = np.concatenate([sums, sums + x])
        sizes = np.concatenate([sizes, sizes + 1])
    keep = sizes > 0
    signs = np.where(sizes[keep] % 2 == 1, 1.0, -1.0)
    terms = signs / sums[keep]
    return float(math.fsum(terms))


def expected_collection_time_exact(probs, cap: int = DEFAULT_CAP):
    """Same sum with Fraction arithmetic, for rational inputs."""
    from fractions import Fraction

    ps = [Fraction(x) for x in probs]
    if len(ps) > cap:
        raise CouponCapacityError(f"{len(ps)} coupons exceeds the cap of {cap}")
    if any(x < 0 for x in ps) or sum(ps) > 1:
        raise CouponDomainError("probabilities must be non-negative and sum to at most 1")
    n = len(ps)
    if any(x == 0 for x in ps):
        return math.inf
    total = Fraction(0)
    for size in range(1, n + 1):
        sign = 1 if size % 2 else -1
        for J in combinations(ps, size):
            total += sign / sum(J, Fraction(0))
    return total


def simulate_collection_time(
    probs: Sequence[float],
    trials: int,
    seed: Optional[int] = 0,
    cap: int = DEFAULT_CAP,
    return_stderr: bool = False,
    batch: int = 200_000,
):
    """Monte Carlo estimate of E[T]; deterministic for a fixed seed."""
    p = _check(probs, cap)
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n = len(p)
    if n == 0:
        return (0.0, 0.0) if return_stderr else 0.0
    if np.any(p == 0):
        return (math.inf, math.inf) if return_stderr else math.inf
    rng = np.random.default_rng(seed)
    full = np.append(p, max(0.0, 1.0 - p.sum()))
    full = full / full.sum()
    cdf = np.cumsum(full)
    cdf[-1] = 1.0
    target = (1 << n) - 1
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < trials:
        m = min(batch, trials - done)
        seen = np.zeros(m, dtype=np.int64)
        steps = np.zeros(m, dtype=np.int64)
        active = np.arange(m)
        while active.size:
            draw = np.searchsorted(cdf, rng.random(active.size), side="right")
            steps[active] += 1
            hit = draw < n
            idx = active[hit]
            seen[idx] |= np.left_shift(1, draw[hit])
            active = active[seen[active] != target]
        total += float(steps.sum())
        total_sq += float((steps.astype(float) ** 2).sum())
        done += m
    mean = total / trials
    if not return_stderr:
        return mean
    var = max(0.0, total_sq / trials - mean * mean)
    se = math.sqrt(var / trials) if trials > 1 else math.inf
    return mean, se
