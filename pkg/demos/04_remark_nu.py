"""
nu = 183783600: stable under division, not under multiplication
===============================================================

nu = 2^4 3^3 5^2 7 11 13 17 loses G when divided by any of its primes,
but 19 nu has a larger G, so nu is not in U1.  Both facts are checked
with the boundary predicates and independently from divisor sums.
"""

from gronwall_u1.gronwall import gronwall_g, multiply_prime
from gronwall_u1.improvability import div_improves, is_u1
from gronwall_u1.oracle import NU, verify_nu
from gronwall_u1.primes import sieve_upto
from gronwall_u1.xi import XiTable

table = sieve_upto(1000)
xi = XiTable()

print("G(nu)    =", gronwall_g(NU).g)
print("G(19 nu) =", gronwall_g(multiply_prime(NU, 19)).g)
for q in NU.primes:
    t = div_improves(NU, q, xi)
    print(f"  divide by {q:>2}: improves? {t.verdict.value:<5} margin {t.margin:+.4f}")

rep = is_u1(NU, table, xi)
print("in U1:", rep.member.verdict.value, "; violated:", [(f.label, f.prime) for f in rep.failures])

# %%
# Direct check from segmented divisor-sum windows (no xi involved).
# Pass scan_min=True to also confirm that no smaller N > 4 has the division
# property; that scan takes several minutes.
print(verify_nu(xi))
