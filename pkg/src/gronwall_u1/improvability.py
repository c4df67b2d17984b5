"""One-prime improvability predicates and the U1 membership test.

Every boundary comparison is reported as a :class:`TriState` whose margin is
the signed distance on the log N axis, positive when the tested inequality
holds.  Margins inside the guard band are first re-evaluated with mpmath;
only if they stay within the high-precision band is AMBIGUOUS returned.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .errors import DomainError, NumericError
from .gronwall import Factorization, GronwallValue, gronwall_g, log_n
from .primes import PrimeTable, nth_prime, sieve_upto
from .xi import XiTable, xi_precise

PRECISE_DPS = 40
PRECISE_GUARD = 1e-25


class Verdict(str, enum.Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    AMBIGUOUS = "AMBIGUOUS"


@dataclass(frozen=True)
class TriState:
    verdict: Verdict
    margin: float
    guard: float

    def __bool__(self) -> bool:
        if self.verdict is Verdict.AMBIGUOUS:
            raise ValueError(f"ambiguous comparison (margin {self.margin:.3e})")
        return self.verdict is Verdict.TRUE

    @property
    def ambiguous(self) -> bool:
        return self.verdict is Verdict.AMBIGUOUS


def classify(margin: float, guard: float) -> TriState:
    if margin > guard:
        return TriState(Verdict.TRUE, margin, guard)
    if margin < -guard:
        return TriState(Verdict.FALSE, margin, guard)
    return TriState(Verdict.AMBIGUOUS, margin, guard)


def both(a: TriState, b: TriState) -> TriState:
    """Conjunction; the margin of the tighter side is kept."""
    return a if a.margin <= b.margin else b


def _precise_log_n(f: Factorization):
    with mpmath.workdps(PRECISE_DPS):
        return mpmath.fsum(a * mpmath.log(p) for p, a in f.factors)


def _boundary(f: Factorization, margin: float, guard: float, sign: int,
              xi_keys: list[tuple[int, int]], log_primes: list[int]) -> TriState:
    """Classify margin = sign * (log N - sum xi(p, a) - sum log p), escalating on a guard hit."""
    t = classify(margin, guard)
    if not t.ambiguous:
        return t
    with mpmath.workdps(PRECISE_DPS):
        rhs = mpmath.fsum([xi_precise(p, a, PRECISE_DPS) for p, a in xi_keys]
                          + [mpmath.log(p) for p in log_primes])
        precise = sign * (_precise_log_n(f) - rhs)
    return classify(float(precise), PRECISE_GUARD)


def mult_improves(f: Factorization, p: int, xi: XiTable, ln: float | None = None) -> TriState:
    """Does G(N p) > G(N)?  TRUE iff log N > xi(p, alpha), alpha = v_p(N)."""
    ln = log_n(f) if ln is None else ln
    alpha = f.exponent(p)
    margin = ln - xi(p, alpha)
    return _boundary(f, margin, xi.tolerance.cmp_guard, 1, [(p, alpha)], [])


def div_improves(f: Factorization, q: int, xi: XiTable, ln: float | None = None) -> TriState:
    """Does G(N/q) > G(N)?  TRUE iff log N < log q + xi(q, alpha-1)."""
    alpha = f.exponent(q)
    if alpha < 1:
        raise DomainError(f"{q} does not divide {f}")
    ln = log_n(f) if ln is None else ln
    margin = xi(q, alpha - 1) + math.log(q) - ln
    return _boundary(f, margin, xi.tolerance.cmp_guard, -1, [(q, alpha - 1)], [q])


def mult_improves_batch(ln: np.ndarray, p: int, alphas: np.ndarray, xi: XiTable) -> np.ndarray:
    """Vectorized mult_improves margins: log N - xi(p, alpha) per element."""
    amax = int(alphas.max()) if alphas.size else 0
    lut = np.array([xi(p, a) for a in range(amax + 1)])
    return ln - lut[alphas]


def div_improves_batch(ln: np.ndarray, q: int, alphas: np.ndarray, xi: XiTable) -> np.ndarray:
    """Vectorized div_improves margins for alpha >= 1: xi(q, alpha-1) + log q - log N."""
    amax = int(alphas.max()) if alphas.size else 1
    lut = np.array([xi(q, a) for a in range(amax)]) + math.log(q)
    return lut[alphas - 1] - ln


def gp_interval(p: int, alpha: int, xi: XiTable) -> tuple[float, float]:
    """Segment of log N on which N (with p^alpha || N) is unimprovable by p alone."""
    if alpha < 1:
        raise DomainError("alpha must be >= 1")
    lo = xi(p, alpha - 1) + math.log(p)
    hi = xi(p, alpha)
    if not lo < hi:
        raise NumericError(f"empty segment for p={p}, alpha={alpha}: [{lo}, {hi}]")
    return lo, hi


def junction_interval(p: int, alpha: int, xi: XiTable) -> tuple[float, float]:
    """Open gap (xi(p, alpha), xi(p, alpha) + log p) between consecutive segments."""
    x = xi(p, alpha)
    return x, x + math.log(p)


@dataclass(frozen=True)
class Failure:
    tag: str  # DIV, MULT or MULT_NEXT
    index: int  # 1-based prime index
    prime: int
    margin: float

    @property
    def label(self) -> str:
        return self.tag if self.tag == "MULT_NEXT" else f"{self.tag}({self.index})"


@dataclass(frozen=True)
class U1Report:
    member: TriState
    k: int
    failures: list[Failure]
    ambiguous: list[Failure]
    g_value: GronwallValue

    @property
    def witnesses(self) -> list[int]:
        return [fl.prime for fl in self.failures]


def u1_conditions(f: Factorization, table: PrimeTable, xi: XiTable):
    """Yield (tag, index, prime, TriState) for every inequality of the U1 test.

    DIV(j):    xi(p_j, a_j - 1) + log p_j <= log N   for a_j > 0
    MULT(i):   log N <= xi(p_i, a_i)                 for all i <= k
    MULT_NEXT: log N <= xi(p_{k+1}, 0)
    """
    ln = log_n(f)
    k = table.index_of(f.largest_prime)
    for i in range(1, k + 1):
        p = table.primes[i - 1]
        a = f.exponent(p)
        if a > 0:
            yield "DIV", i, p, negate(div_improves(f, p, xi, ln))
        yield "MULT", i, p, negate(mult_improves(f, p, xi, ln))
    nxt = nth_prime(table, k + 1)
    yield "MULT_NEXT", k + 1, nxt, negate(mult_improves(f, nxt, xi, ln))


def negate(t: TriState) -> TriState:
    """Logical NOT; the margin flips sign so positive still means "holds"."""
    v = {Verdict.TRUE: Verdict.FALSE, Verdict.FALSE: Verdict.TRUE}.get(t.verdict, t.verdict)
    return TriState(v, -t.margin, t.guard)


def is_u1(f: Factorization, table: PrimeTable, xi: XiTable) -> U1Report:
    """Membership of N in U1 via the prime-by-prime boundary inequalities."""
    if not f.factors or log_n(f) <= math.log(5.5):
        raise DomainError("U1 is defined for N > 5 only (3, 4 and 5 are excluded)")
    k = table.index_of(f.largest_prime)
    failures, ambiguous = [], []
    worst = None
    for tag, i, p, t in u1_conditions(f, table, xi):
        if t.verdict is Verdict.FALSE:
            failures.append(Failure(tag, i, p, t.margin))
        elif t.ambiguous:
            ambiguous.append(Failure(tag, i, p, t.margin))
        worst = t if worst is None else both(worst, t)
    if failures:
        member = TriState(Verdict.FALSE, min(fl.margin for fl in failures), worst.guard)
    elif ambiguous:
        member = TriState(Verdict.AMBIGUOUS, worst.margin, worst.guard)
    else:
        member = worst
    return U1Report(member=member, k=k, failures=failures, ambiguous=ambiguous, g_value=gronwall_g(f))


@lru_cache(maxsize=8)
def _small_primes(limit: int) -> tuple[int, ...]:
    return sieve_upto(max(limit, 2)).primes


def check_b1(f: Factorization) -> bool:
    """Consecutive primes 2..P(N), non-increasing exponents, last exponent 1."""
    if not f.factors:
        return False
    expected = _small_primes(f.largest_prime)
    if f.primes != expected:
        return False
    ex = f.exponents
    return all(a >= b for a, b in zip(ex, ex[1:])) and ex[-1] == 1
