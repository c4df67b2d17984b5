"""
Building V_k step by step
=========================

Start from the primorial T(p_k), raise exponents until the exponent vector
is a fixed point, then bump the exponents whose boundary was overshot.
k = 4 is small enough to need that last correction; k = 9 produces the
smallest one-step G-unimprovable number.
"""

from gronwall_u1.constructor import construct_vk, minimality_probe, y_bound
from gronwall_u1.primes import sieve_upto
from gronwall_u1.xi import XiTable

table = sieve_upto(10_000)
xi = XiTable()

for k in (4, 9):
    tr = construct_vk(k, xi, table)
    print(f"--- k = {k} (p_k = {table.primes[k - 1]}) ---")
    for s, exps, log_y in tr.y_iterates:
        print(f"  Y^({s}): exponents {exps}  log Y = {log_y:.6f}")
    print(f"  fixed point after s0 = {tr.s0}; iterate bound {y_bound(k, table):.4f}")
    for s, (e, exps) in enumerate(tr.e_sets):
        print(f"  E_{s} = {sorted(j + 1 for j in e)}  exponents {exps}")
    print(f"  V_{k} = {tr.v_k}  (log V = {tr.log_v:.6f})")
    print(f"  G = {tr.g_value.g:.10f}  C = {tr.c_k:.6f}  filter = {tr.filter.verdict.value}"
          f"  minimal = {minimality_probe(tr, xi)}")

# %%
# C_k stays well inside (0.5, 3) across a wide range of k.
cs = [construct_vk(k, xi, table).c_k for k in range(4, 201)]
print(f"\nC_k over k = 4..200: min {min(cs):.4f}, max {max(cs):.4f}")
