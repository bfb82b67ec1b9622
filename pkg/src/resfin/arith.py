"""Exact integer arithmetic helpers: primality, factorization, lcm valuations.

Everything here is deterministic.  Primality is Miller-Rabin with the fixed
witness set that is known to be exact below 3.3 * 10**24; inputs at or above
that bound are rejected rather than answered probabilistically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Deterministic Miller-Rabin witnesses, exact for n < 3 317 044 064 679 887 385 961 981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981

_SIEVE_CAP = 10**8


class PrimalityRangeError(ValueError):
    """Raised when a primality query exceeds the deterministic witness range."""


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 3.3e24."""
    if n < 0:
        raise ValueError("primality is defined for nonnegative integers")
    if n >= MR_DETERMINISTIC_BOUND:
        raise PrimalityRangeError(
            f"{n} exceeds the deterministic Miller-Rabin bound {MR_DETERMINISTIC_BOUND}"
        )
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by sieve of Eratosthenes."""
    if limit > _SIEVE_CAP:
        raise ValueError(f"sieve limit {limit} exceeds cap {_SIEVE_CAP}")
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(limit + 1) if sieve[i]]


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as a sorted tuple of (prime, exponent) pairs."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for (p, e) in self.factors:
            if e < 1:
                raise ValueError(f"exponent {e} < 1 in factorization")
        primes = [p for p, _ in self.factors]
        if primes != sorted(primes) or len(set(primes)) != len(primes):
            raise ValueError("factorization primes must be strictly increasing")

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __iter__(self):
        return iter(self.factors)


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n, Brent's variant, deterministic."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable for n <= 1e18


def _factor_into(n: int, acc: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor_into(d, acc)
    _factor_into(n // d, acc)


def factorize(n: int) -> Factorization:
    """Full prime factorization of n >= 1.  factorize(1) has no factors."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    acc: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            acc[p] = acc.get(p, 0) + 1
            n //= p
    if n > 1:
        _factor_into(n, acc)
    return Factorization(tuple(sorted(acc.items())))


def lcm_valuation(k: int, p: int) -> int:
    """The p-adic valuation of lcm(1..k): the largest i with p**i <= k.

    This never materializes the lcm, so k may be large.
    """
    if k < 1:
        raise ValueError("lcm_valuation requires k >= 1")
    i = 0
    q = p
    while q <= k:
        i += 1
        q *= p
    return i


def least_nondivisor(m: int) -> int:
    """The smallest integer d >= 2 that does not divide m.

    The result is always a prime power: if d = uv with coprime u, v > 1 then
    u and v both divide m by minimality, hence so does d.
    """
    if m < 1:
        raise ValueError("least_nondivisor requires m >= 1")
    d = 2
    while m % d == 0:
        d += 1
    return d


def prime_powers_above(k: int, limit: int) -> list[tuple[int, int]]:
    """All (p, i) with p prime and k < p**i <= limit, sorted by the value p**i.

    These are exactly the prime powers q with q not dividing lcm(1..k):
    p**i | lcm(1..k) iff p**i <= k.
    """
    if limit < k:
        raise ValueError("limit must be at least k")
    out: list[tuple[int, int, int]] = []
    for p in primes_up_to(limit):
        q = p
        i = 1
        while q <= limit:
            if q > k:
                out.append((q, p, i))
            q *= p
            i += 1
    out.sort()
    return [(p, i) for _, p, i in out]


def is_prime_power(q: int) -> tuple[int, int] | None:
    """(p, i) with q = p**i if q is a prime power, else None."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f.factors) == 1:
        return f.factors[0]
    return None


_PRIME_POWER_CACHE: list[int] = []


def prime_powers_up_to(limit: int) -> list[int]:
    """Sorted prime powers q <= limit (cached; grows on demand)."""
    global _PRIME_POWER_CACHE
    if not _PRIME_POWER_CACHE or _PRIME_POWER_CACHE[-1] < limit:
        cap = max(limit, 512)
        vals = []
        for p in primes_up_to(cap):
            q = p
            while q <= cap:
                vals.append(q)
                q *= p
        _PRIME_POWER_CACHE = sorted(vals)
    from bisect import bisect_right

    return _PRIME_POWER_CACHE[: bisect_right(_PRIME_POWER_CACHE, limit)]
