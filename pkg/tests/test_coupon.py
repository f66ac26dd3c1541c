import math
from fractions import Fraction
from itertools import permutations

import pytest

from pumpgram.coupon import (
    CouponCapacityError,
    CouponDomainError,
    expected_collection_time,
    expected_collection_time_exact,
    simulate_collection_time,
)


def markov_expected_time(probs):
    """Oracle: expected steps to absorb over the subset-of-seen Markov chain."""
    n = len(probs)
    full = (1 << n) - 1
    memo = {full: Fraction(0)}
    ps = [Fraction(p) for p in probs]

    def e(mask):
        if mask in memo:
            return memo[mask]
        stay = 1 - sum(ps[i] for i in range(n) if not mask >> i & 1)
        acc = Fraction(1)
        for i in range(n):
            if not mask >> i & 1:
                acc += ps[i] * e(mask | 1 << i)
        memo[mask] = acc / (1 - stay)
        return memo[mask]

    return e(0)


def test_single_certain_coupon():
    assert expected_collection_time([1.0]) == 1.0
    assert simulate_collection_time([1.0], 100, seed=5) == 1.0


def test_two_fair_coupons():
    assert expected_collection_time([0.5, 0.5]) == 3.0
    assert expected_collection_time_exact([Fraction(1, 2), Fraction(1, 2)]) == 3


def test_sink_mass():
    assert expected_collection_time_exact([Fraction(1, 2), Fraction(1, 4)]) == Fraction(14, 3)
    mean, se = simulate_collection_time([0.5, 0.25], 1_000_000, seed=1, return_stderr=True)
    assert abs(mean - 14 / 3) / (14 / 3) < 0.01
    assert abs(mean - 14 / 3) < 4 * se


@pytest.mark.parametrize(
    "probs",
    [
        [Fraction(1, 3)] * 3,
        [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)],
        [Fraction(1, 10), Fraction(2, 10), Fraction(3, 10)],
        [Fraction(1, 7)] * 4,
    ],
)
def test_inclusion_exclusion_matches_markov_chain(probs):
    assert expected_collection_time_exact(probs) == markov_expected_time(probs)
    assert math.isclose(expected_collection_time([float(p) for p in probs]), float(markov_expected_time(probs)), rel_tol=1e-9)


def test_order_does_not_matter():
    ps = [0.1, 0.2, 0.3, 0.05]
    values = {round(expected_collection_time(list(p)), 9) for p in permutations(ps)}
    assert len(values) == 1


def test_zero_probability_is_infinite():
    assert expected_collection_time([0.5, 0.0]) == math.inf
    assert expected_collection_time([]) == 0.0


def test_domain_and_capacity_errors():
    with pytest.raises(CouponDomainError):
        expected_collection_time([0.7, 0.7])
    with pytest.raises(CouponDomainError):
        expected_collection_time([-0.1])
    with pytest.raises(CouponCapacityError):
        expected_collection_time([0.01] * 21)
    assert expected_collection_time([0.01] * 21, cap=21) > 0
    with pytest.raises(ValueError):
        simulate_collection_time([0.5], 0)


def test_simulation_is_deterministic_per_seed():
    a = simulate_collection_time([0.2, 0.3, 0.1], 5000, seed=42)
    b = simulate_collection_time([0.2, 0.3, 0.1], 5000, seed=42)
    c = simulate_collection_time([0.2, 0.3, 0.1], 5000, seed=43)
    assert a == b and a != c
