from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import UsageError

FACTOR_LIMIT = 10**6


@dataclass(frozen=True)
class PrimePowerFactorization:
    """``n = 2**power_of_two * prod(p**e for p, e in odd_factors)``."""

    n: int
    power_of_two: int
    odd_factors: tuple[tuple[int, int], ...]

    @property
    def factors(self) -> tuple[tuple[int, int], ...]:
        two = ((2, self.power_of_two),) if self.power_of_two else ()
        return two + self.odd_factors

    def odd_prime_powers(self) -> tuple[int, ...]:
        return tuple(sorted(p**a for p, e in self.odd_factors for a in range(1, e + 1)))


@lru_cache(maxsize=None)
def factorize(n: int) -> PrimePowerFactorization:
    if n < 1:
        raise UsageError(f"cannot factor {n}")
    if n > FACTOR_LIMIT:
        raise UsageError(f"trial division is limited to n <= {FACTOR_LIMIT}")
    m = n
    twos = 0
    while m % 2 == 0:
        m //= 2
        twos += 1
    odd = []
    p = 3
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            odd.append((p, e))
        p += 2
    if m > 1:
        odd.append((m, 1))
    return PrimePowerFactorization(n, twos, tuple(odd))


def odd_prime_powers(n: int) -> tuple[int, ...]:
    """All ``p**a`` with ``p`` an odd prime and ``p**a | n``, ascending."""
    return factorize(n).odd_prime_powers()


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).factors == ((n, 1),)


def odd_part(n: int) -> int:
    while n and n % 2 == 0:
        n //= 2
    return n


def prime_power_base(q: int) -> int:
    """The prime ``p`` with ``q = p**a``; raises for non prime powers."""
    f = factorize(q).factors
    if len(f) != 1:
        raise UsageError(f"{q} is not a prime power")
    return f[0][0]


def max_prime_power_product(qs) -> int:
    """Product over primes of the largest listed power of that prime."""
    best: dict[int, int] = {}
    for q in qs:
        p = prime_power_base(q)
        best[p] = max(best.get(p, 1), q)
    return math.prod(best.values())
