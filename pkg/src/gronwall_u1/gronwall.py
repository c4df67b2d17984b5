"""Factored integers and the Gronwall function G(N) = sigma(N) / (N log log N).

Values like V_101 ~ 1e240 never pass through floats; everything analytic
works from the (prime, exponent) list.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import DomainError, ParseError, RangeError
from .primes import PrimeTable

_INT_POW_CAP = 2**62


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 0
        for p, a in self.factors:
            if p <= last:
                raise ValueError(f"primes must be strictly increasing: {self.factors}")
            if a < 1:
                raise ValueError(f"exponents must be positive: {self.factors}")
            last = p

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> Factorization:
        return cls(tuple((int(p), int(a)) for p, a in sorted(d.items()) if a))

    @classmethod
    def from_exponents(cls, primes: Iterable[int], exponents: Iterable[int]) -> Factorization:
        return cls(tuple((int(p), int(a)) for p, a in zip(primes, exponents) if a))

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.factors)

    @cached_property
    def _exp_map(self) -> dict[int, int]:
        return dict(self.factors)

    def exponent(self, p: int) -> int:
        return self._exp_map.get(p, 0)

    @property
    def largest_prime(self) -> int:
        if not self.factors:
            raise DomainError("1 has no prime factor")
        return self.factors[-1][0]

    def to_int(self) -> int:
        n = 1
        for p, a in self.factors:
            n *= p**a
        return n

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)


@dataclass(frozen=True)
class GronwallValue:
    g: float
    log_n: float
    sigma_ratio: float


def log_n(f: Factorization) -> float:
    if not f.factors:
        raise DomainError("log N of the empty factorization")
    return math.fsum(a * math.log(p) for p, a in f.factors)


def _sigma_factor(p: int, a: int) -> float:
    # sigma(p^a) / p^a
    if p ** (a + 1) < _INT_POW_CAP:
        return (p ** (a + 1) - 1) / (p**a * (p - 1))
    return -math.expm1(-(a + 1) * math.log(p)) / -math.expm1(-math.log(p))


def sigma_over_n(f: Factorization) -> float:
    """sigma(N)/N as a product of per-prime-power factors."""
    factors = sorted((_sigma_factor(p, a) for p, a in f.factors), reverse=True)
    out = 1.0
    for x in factors:
        out *= x
    return out


def gronwall_g(f: Factorization) -> GronwallValue:
    ln = log_n(f) if f.factors else 0.0
    if ln <= 1.0:
        raise DomainError("G undefined for N <= e")
    s = sigma_over_n(f)
    return GronwallValue(g=s / math.log(ln), log_n=ln, sigma_ratio=s)


def multiply_prime(f: Factorization, p: int) -> Factorization:
    d = f.as_dict()
    d[p] = d.get(p, 0) + 1
    return Factorization.from_dict(d)


def divide_prime(f: Factorization, q: int) -> Factorization:
    d = f.as_dict()
    if d.get(q, 0) < 1:
        raise DomainError(f"{q} does not divide {f}")
    d[q] -= 1
    return Factorization.from_dict(d)


def to_decimal_string(f: Factorization) -> str:
    """Exact base-10 digits of N."""
    return str(f.to_int())


def scientific(f: Factorization, digits: int = 3) -> str:
    """Truncated scientific rendering, e.g. '5.19e63' (matches '5.19...' style)."""
    s = to_decimal_string(f)
    exp = len(s) - 1
    head = s[:digits]
    mant = head[0] + ("." + head[1:] if len(head) > 1 else "")
    return f"{mant}e{exp}"


_TERM = re.compile(r"^(\d+)(?:\^(\d+))?$")
_SEP = re.compile(r"[,·*\s]+")


def parse_number(text: str, table: PrimeTable) -> Factorization:
    """Parse '160626866400' or '2^5,3^3,5^2*7' into a Factorization."""
    text = text.strip()
    if not text:
        raise ParseError("empty input")
    if text.isdigit():
        n = int(text)
        if n >= 2**63:
            raise ParseError("decimal input must be < 2^63; use the factor-list syntax")
        return _factor_by_trial(n, table)
    d: dict[int, int] = {}
    for term in _SEP.split(text):
        if not term:
            continue
        m = _TERM.match(term)
        if not m:
            raise ParseError(f"malformed factor term {term!r}")
        p, a = int(m.group(1)), int(m.group(2) or 1)
        if p > table.limit:
            raise RangeError(f"factor {p} is beyond the sieve limit {table.limit}")
        if p not in table:
            raise ParseError(f"{p} is not prime")
        d[p] = d.get(p, 0) + a
    return Factorization.from_dict(d)


def _factor_by_trial(n: int, table: PrimeTable) -> Factorization:
    if n < 1:
        raise ParseError("N must be positive")
    d: dict[int, int] = {}
    for p in table.primes:
        if p * p > n:
            break
        while n % p == 0:
            n //= p
            d[p] = d.get(p, 0) + 1
    else:
        if n > 1:
            raise RangeError(f"remainder {n} has no prime factor within the sieve (limit {table.limit})")
    if n > 1:
        d[n] = d.get(n, 0) + 1
    return Factorization.from_dict(d)
