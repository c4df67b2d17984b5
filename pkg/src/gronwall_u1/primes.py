"""Prime table with Chebyshev theta/psi prefix sums."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, RangeError

MAX_LIMIT = 10**9


def _eratosthenes(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[p]:
            is_prime[p * p :: 2 * p] = False
    return np.flatnonzero(is_prime)


def _compensated_prefix(values) -> list[float]:
    # Neumaier summation; keeps drift well below 1e-12 for tens of thousands of terms.
    out = []
    s = 0.0
    c = 0.0
    for v in values:
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        out.append(s + c)
    return out


@dataclass(frozen=True)
class PrimeTable:
    """Primes up to ``limit`` with cumulative sums of ``log p``.

    ``theta_prefix[n]`` holds ``log p_1 + ... + log p_{n+1}`` (0-based list index).
    """

    limit: int
    primes: tuple[int, ...]
    theta_prefix: tuple[float, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, p: int) -> bool:
        i = bisect.bisect_left(self.primes, p)
        return i < len(self.primes) and self.primes[i] == p

    def index_of(self, p: int) -> int:
        """1-based index n with p_n = p."""
        i = bisect.bisect_left(self.primes, p)
        if i == len(self.primes) or self.primes[i] != p:
            if p > self.limit:
                raise RangeError(f"{p} exceeds sieve limit {self.limit}; use a larger sieve")
            raise ValueError(f"{p} is not prime")
        return i + 1

    def count_upto(self, x: float) -> int:
        return bisect.bisect_right(self.primes, math.floor(x))


def sieve_upto(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes up to ``limit`` inclusive."""
    if not isinstance(limit, (int, np.integer)) or not 2 <= limit <= MAX_LIMIT:
        raise ConfigurationError(f"sieve limit must be an integer in [2, {MAX_LIMIT}], got {limit!r}")
    limit = int(limit)
    primes = tuple(int(p) for p in _eratosthenes(limit))
    prefix = _compensated_prefix(math.log(p) for p in primes)
    return PrimeTable(limit=limit, primes=primes, theta_prefix=tuple(prefix))


def nth_prime(table: PrimeTable, n: int) -> int:
    if n < 1:
        raise ValueError("prime index is 1-based")
    if n > len(table.primes):
        raise RangeError(
            f"p_{n} is beyond the table ({len(table.primes)} primes <= {table.limit}); use a larger sieve"
        )
    return table.primes[n - 1]


def theta(table: PrimeTable, x: float) -> float:
    """Chebyshev theta: sum of log p over primes p <= x."""
    if x > table.limit:
        raise RangeError(f"theta({x}) needs primes beyond sieve limit {table.limit}")
    n = table.count_upto(x)
    return table.theta_prefix[n - 1] if n else 0.0


def psi(table: PrimeTable, x: float) -> float:
    """Chebyshev psi as theta(x) + theta(x^(1/2)) + theta(x^(1/3)) + ..."""
    if x > table.limit:
        raise RangeError(f"psi({x}) needs primes beyond sieve limit {table.limit}")
    total = 0.0
    m = 1
    while True:
        root = _int_root_floor(x, m)
        if root < 2:
            return total
        total += theta(table, root)
        m += 1


def _int_root_floor(x: float, m: int) -> int:
    # floor(x^(1/m)) without float off-by-one at perfect powers
    n = math.floor(x)
    r = int(round(n ** (1.0 / m)))
    while r**m > n:
        r -= 1
    while (r + 1) ** m <= n:
        r += 1
    return r


def log_primorial(table: PrimeTable, k: int) -> float:
    """theta(p_k) = log(p_1 * ... * p_k)."""
    nth_prime(table, k)
    return table.theta_prefix[k - 1]
