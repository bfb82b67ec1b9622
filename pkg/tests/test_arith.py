"""Tests for exact integer helpers.

Expected values for the factorization and nondivisor examples were computed
with the trial-division oracle below before being frozen into assertions.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resfin import arith


def trial_division_factorize(n):
    """Independent oracle: factor by dividing out 2, 3, 4, ... in order."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


class TestFactorize:
    def test_twelve(self):
        assert arith.factorize(12).factors == ((2, 2), (3, 1))

    def test_one_is_empty(self):
        assert arith.factorize(1).factors == ()

    def test_prime(self):
        assert arith.factorize(97).factors == ((97, 1),)

    def test_against_trial_division_small(self):
        for n in range(1, 2000):
            assert arith.factorize(n).factors == trial_division_factorize(n)

    def test_large_semiprime(self):
        p, q = 1_000_000_007, 998_244_353
        assert arith.factorize(p * q).factors == ((q, 1), (p, 1))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            arith.factorize(0)

    @settings(max_examples=200)
    @given(st.integers(min_value=1, max_value=10**12))
    def test_roundtrip(self, n):
        f = arith.factorize(n)
        assert f.value == n
        primes = [p for p, _ in f]
        assert primes == sorted(set(primes))
        assert all(arith.is_prime(p) for p in primes)


class TestIsPrime:
    def test_small_table(self):
        primes = set(arith.primes_up_to(1000))
        for n in range(1000):
            assert arith.is_prime(n) == (n in primes)

    def test_carmichael(self):
        # 561 = 3 * 11 * 17 fools the Fermat test but not Miller-Rabin.
        assert not arith.is_prime(561)
        assert not arith.is_prime(41041)

    def test_large_prime(self):
        assert arith.is_prime(2**61 - 1)

    def test_range_rejection(self):
        with pytest.raises(arith.PrimalityRangeError):
            arith.is_prime(arith.MR_DETERMINISTIC_BOUND)


class TestLcmValuation:
    def test_examples(self):
        assert arith.lcm_valuation(6, 2) == 2
        assert arith.lcm_valuation(10, 3) == 2
        assert arith.lcm_valuation(5, 7) == 0

    def test_against_materialized_lcm(self):
        # Direct cross-check for every k <= 30 and every prime p <= 31.
        for k in range(1, 31):
            l = math.lcm(*range(1, k + 1))
            for p in arith.primes_up_to(31):
                v = 0
                while l % p**(v + 1) == 0:
                    v += 1
                assert arith.lcm_valuation(k, p) == v

    @given(st.integers(min_value=1, max_value=10**15))
    def test_defining_property(self, k):
        v = arith.lcm_valuation(k, 2)
        assert 2**v <= k < 2**(v + 1)


class TestLeastNondivisor:
    def test_examples(self):
        assert arith.least_nondivisor(12) == 5
        assert arith.least_nondivisor(60) == 7
        assert arith.least_nondivisor(1) == 2

    @settings(max_examples=300)
    @given(st.integers(min_value=1, max_value=10**12))
    def test_result_is_prime_power(self, m):
        d = arith.least_nondivisor(m)
        assert m % d != 0
        assert all(m % e == 0 for e in range(2, d))
        assert arith.is_prime_power(d) is not None

    def test_of_lcm_exceeds_k(self):
        # least_nondivisor(lcm(1..k)) is the least prime power > k; checked
        # against the materialized lcm where that is cheap.
        for k in range(1, 65):
            l = math.lcm(*range(1, k + 1))
            d = arith.least_nondivisor(l)
            assert d > k
            p, i = arith.prime_powers_above(k, 2 * k + 2)[0]
            assert d == p**i

    def test_of_lcm_via_valuations_large_k(self):
        # For k up to 2000, the least nondivisor of lcm(1..k) must equal the
        # first prime power above k, computed without materializing the lcm.
        for k in (100, 500, 1000, 1999):
            p, i = arith.prime_powers_above(k, 2 * k + 2)[0]
            q = p**i
            assert q > k
            # every integer in [2, q) divides lcm(1..k)
            for d in range(max(2, q - 5), q):
                for pp, e in arith.factorize(d):
                    assert pp**e <= k


class TestPrimePowersAbove:
    def test_example_six_twelve(self):
        assert arith.prime_powers_above(6, 12) == [(7, 1), (2, 3), (3, 2), (11, 1)]

    def test_example_one_five(self):
        got = arith.prime_powers_above(1, 5)
        assert got == [(2, 1), (3, 1), (2, 2), (5, 1)]

    def test_example_four_five(self):
        assert arith.prime_powers_above(4, 5) == [(5, 1)]

    def test_sorted_by_value(self):
        vals = [p**i for p, i in arith.prime_powers_above(10, 200)]
        assert vals == sorted(vals)

    def test_matches_lcm_divisibility(self):
        for k in (3, 10, 17):
            l = math.lcm(*range(1, k + 1))
            got = {p**i for p, i in arith.prime_powers_above(k, 60)}
            expect = {
                q
                for q in range(2, 61)
                if arith.is_prime_power(q) and l % q != 0
            }
            assert got == expect

    def test_limit_below_k_rejected(self):
        with pytest.raises(ValueError):
            arith.prime_powers_above(10, 5)


def test_prime_powers_up_to():
    assert arith.prime_powers_up_to(10) == [2, 3, 4, 5, 7, 8, 9]
    assert arith.prime_powers_up_to(1) == []
    # cache growth keeps results consistent
    big = arith.prime_powers_up_to(1000)
    assert arith.prime_powers_up_to(10) == [2, 3, 4, 5, 7, 8, 9]
    assert big[-1] <= 1000


def test_is_prime_power():
    assert arith.is_prime_power(8) == (2, 3)
    assert arith.is_prime_power(9) == (3, 2)
    assert arith.is_prime_power(12) is None
    assert arith.is_prime_power(1) is None
