"""
Brute-force confirmation of the boundary predicates
===================================================

For every 3 <= N <= 10^6 and every prime p <= 31, compare the xi-based
verdict "G(Np) > G(N)" (and "G(N/p) > G(N)" when p | N) with a direct
comparison of G computed from a divisor-sum sieve.
"""

import time

from gronwall_u1.oracle import sigma_sieve, sweep_lemma_equivalence
from gronwall_u1.xi import XiTable

t0 = time.perf_counter()
sieve = sigma_sieve(31 * 10**6)
print(f"sigma sieve to {sieve.limit:,}: {time.perf_counter() - t0:.1f}s")

t0 = time.perf_counter()
res = sweep_lemma_equivalence(10**6, 31, sieve, XiTable())
print(f"{res.comparisons:,} comparisons in {time.perf_counter() - t0:.1f}s")
print("mismatches:", len(res.mismatches), " guard-band hits:", len(res.guard_hits))
