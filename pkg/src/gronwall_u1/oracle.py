"""Brute-force checks: divisor-sum sieve, direct G, and lemma sweeps.

Nothing here uses xi or the factored sigma formula, so agreement with the
analytic predicates is an independent confirmation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import ConfigurationError, DomainError
from .gronwall import Factorization
from .improvability import div_improves, div_improves_batch, mult_improves_batch
from .primes import sieve_upto
from .xi import XiTable

MAX_SIEVE = 2 * 10**8
SEGMENT = 10**7

NU = Factorization.from_dict({2: 4, 3: 3, 5: 2, 7: 1, 11: 1, 13: 1, 17: 1})


@njit(cache=True)
def _sigma_dense(limit):
    sigma = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            sigma[m] += d
    return sigma


@njit(cache=True)
def _sigma_window(lo, hi):
    # sigma(n) for lo <= n < hi from divisor pairs (d, n/d) with d*d <= n
    out = np.zeros(hi - lo, dtype=np.int64)
    d = 1
    while d * d < hi:
        m = max(d * d, ((lo + d - 1) // d) * d)
        q = m // d
        while m < hi:
            if q == d:
                out[m - lo] += d
            else:
                out[m - lo] += d + q
            m += d
            q += 1
        d += 1
    return out


def sigma_window(lo: int, hi: int) -> np.ndarray:
    """sigma(n) for lo <= n < hi (segmented; any offset)."""
    if lo < 1 or hi <= lo:
        raise ConfigurationError(f"bad window [{lo}, {hi})")
    return _sigma_window(lo, hi)


@dataclass(frozen=True)
class SigmaSieve:
    limit: int
    sigma: np.ndarray = field(repr=False)

    def __getitem__(self, n: int) -> int:
        return int(self.sigma[n])


def sigma_sieve(limit: int) -> SigmaSieve:
    """Exact sigma(n) for 1 <= n <= limit (index 0 unused)."""
    if not 1 <= limit <= MAX_SIEVE:
        raise ConfigurationError(f"sigma sieve limit must be in [1, {MAX_SIEVE}], got {limit}")
    if limit <= SEGMENT:
        sigma = _sigma_dense(limit)
    else:
        sigma = np.empty(limit + 1, dtype=np.int64)
        sigma[0] = 0
        for lo in range(1, limit + 1, SEGMENT):
            hi = min(lo + SEGMENT, limit + 1)
            sigma[lo:hi] = _sigma_window(lo, hi)
    return SigmaSieve(limit, sigma)


def g_direct(n: int, sieve: SigmaSieve) -> float:
    if n < 3:
        raise DomainError("G(n) needs n >= 3")
    if n > sieve.limit:
        raise DomainError(f"{n} beyond sieve limit {sieve.limit}")
    return sieve[n] / (n * math.log(math.log(n)))


def _g_array(n: np.ndarray, sig: np.ndarray) -> np.ndarray:
    nf = n.astype(np.float64)
    return sig.astype(np.float64) / (nf * np.log(np.log(nf)))


def _valuation(n: np.ndarray, p: int) -> np.ndarray:
    v = np.zeros(n.shape, dtype=np.int64)
    m = n.copy()
    mask = m % p == 0
    while mask.any():
        v[mask] += 1
        m[mask] //= p
        mask = (m % p == 0) & mask
    return v


@dataclass(frozen=True)
class Mismatch:
    kind: str  # "mult" or "div"
    n: int
    p: int
    margin: float
    g_before: float
    g_after: float


@dataclass
class SweepResult:
    mismatches: list[Mismatch]
    guard_hits: list[Mismatch]
    comparisons: int

    @property
    def ok(self) -> bool:
        return not self.mismatches


def sweep_lemma_equivalence(n_max: int, p_max: int, sieve: SigmaSieve, xi: XiTable) -> SweepResult:
    """Compare xi-based verdicts with direct G for all 3 <= N <= n_max, p <= p_max.

    Multiplication: improves iff G(Np) > G(N).  Division (q | N, N/q >= 3):
    improves iff G(N/q) > G(N).  Verdicts inside the guard band are returned
    as guard hits, not mismatches.
    """
    if n_max * p_max > sieve.limit:
        raise ConfigurationError(f"sieve limit {sieve.limit} < n_max * p_max = {n_max * p_max}")
    guard = xi.tolerance.cmp_guard
    n = np.arange(3, n_max + 1, dtype=np.int64)
    ln = np.log(n.astype(np.float64))
    g_n = _g_array(n, sieve.sigma[n])
    mismatches, hits = [], []
    count = 0
    for p in sieve_upto(max(p_max, 2)).primes:
        alpha = _valuation(n, p)

        margin = mult_improves_batch(ln, p, alpha, xi)
        g_np = _g_array(n * p, sieve.sigma[n * p])
        count += n.size
        _collect("mult", n, p, margin, g_n, g_np, guard, mismatches, hits)

        sel = (alpha > 0) & (n // p >= 3)
        if sel.any():
            nd = n[sel]
            margin = div_improves_batch(ln[sel], p, alpha[sel], xi)
            g_nq = _g_array(nd // p, sieve.sigma[nd // p])
            count += nd.size
            _collect("div", nd, p, margin, g_n[sel], g_nq, guard, mismatches, hits)
    return SweepResult(mismatches, hits, count)


def _collect(kind, n, p, margin, g_before, g_after, guard, mismatches, hits):
    direct = g_after > g_before
    predicted = margin > 0
    amb = np.abs(margin) <= guard
    for i in np.flatnonzero(amb):
        hits.append(Mismatch(kind, int(n[i]), p, float(margin[i]), float(g_before[i]), float(g_after[i])))
    for i in np.flatnonzero((direct != predicted) & ~amb):
        mismatches.append(Mismatch(kind, int(n[i]), p, float(margin[i]), float(g_before[i]), float(g_after[i])))


@dataclass
class NuReport:
    g_nu: float
    g_19nu: float
    divisor_ok: dict[int, bool]
    predicate_ok: dict[int, bool]
    mult19_ok: bool
    scan_min: bool | None = None  # None when the scan was skipped
    scan_counterexample: int | None = None

    @property
    def ok(self) -> bool:
        return (all(self.divisor_ok.values()) and all(self.predicate_ok.values())
                and self.mult19_ok and self.scan_min is not False)


def verify_nu(xi: XiTable | None = None, scan_min: bool = False, segment: int = SEGMENT) -> NuReport:
    """Direct checks on nu = 183783600.

    G(nu/q) < G(nu) for every prime q | nu and G(19 nu) > G(nu), from
    segmented sigma windows.  With ``scan_min`` every 5 <= N <= nu is tested
    for the division property and nu must be the first hit (O(nu) work,
    several minutes).
    """
    xi = xi or XiTable()
    nu = NU.to_int()

    def g_at(m: int) -> float:
        s = int(sigma_window(m, m + 1)[0])
        return s / (m * math.log(math.log(m)))

    g_nu = g_at(nu)
    g_19 = g_at(19 * nu)
    divisor_ok = {q: g_at(nu // q) < g_nu for q in NU.primes}
    predicate_ok = {q: div_improves(NU, q, xi).verdict.value == "FALSE" for q in NU.primes}
    rep = NuReport(g_nu=g_nu, g_19nu=g_19, divisor_ok=divisor_ok, predicate_ok=predicate_ok,
                   mult19_ok=g_19 > g_nu)
    if scan_min:
        found = scan_division_property(5, nu + 1, segment)
        rep.scan_min = found == nu
        rep.scan_counterexample = None if found == nu else found
    return rep


def scan_division_property(lo: int, hi: int, segment: int = SEGMENT) -> int | None:
    """Smallest N in [lo, hi) with G(N/q) < G(N) for every prime q | N, or None.

    G is undefined below 3, so any N with some N/q < 3 fails the property.
    Builds a dense uint32 sigma table on [1, hi) (sigma(n) < 5.2 n holds far
    beyond 4e8), about 4 bytes per integer.
    """
    if hi > 4 * 10**8:
        raise ConfigurationError("scan range too large for the uint32 sigma table")
    sig = np.empty(hi, dtype=np.uint32)
    sig[0] = 0
    for a in range(1, hi, segment):
        b = min(a + segment, hi)
        sig[a:b] = _sigma_window(a, b)
    hit = _scan(max(lo, 3), hi, sig)
    return None if hit < 0 else int(hit)


@njit(cache=True)
def _scan(lo, hi, sig):
    for n in range(lo, hi):
        gn = sig[n] / (n * np.log(np.log(n)))
        m = n
        ok = True
        p = 2
        while ok and m > 1:
            if p * p > m:
                p = m  # remaining cofactor is prime
            if m % p == 0:
                while m % p == 0:
                    m //= p
                k = n // p
                if k < 3 or sig[k] / (k * np.log(np.log(k))) >= gn:
                    ok = False
            p += 1 if p == 2 else 2
        if ok:
            return n
    return -1
