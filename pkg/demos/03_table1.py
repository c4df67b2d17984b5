"""
The first six one-step G-unimprovable numbers
=============================================

Construct V_k for k = 4..101 and keep those that also pass the two extra
boundary inequalities at p_k and p_{k+1}.  The survivors are checked
against the published table.
"""

from gronwall_u1.constructor import enumerate_u1
from gronwall_u1.gronwall import scientific
from gronwall_u1.primes import sieve_upto
from gronwall_u1.table1 import check_enumeration, truncate
from gronwall_u1.xi import XiTable

table = sieve_upto(10_000)
xi = XiTable()
enum = enumerate_u1(101, xi, table)

print(" m   k_m   value        G            C")
for r in enum.records:
    print(f"{r.m:>2}  {r.k_m:>4}   {scientific(r.v):<11}  {truncate(r.g, 6):<11}  {truncate(r.c, 2)}")

print("\nlargest G over k = 4..101: k =", enum.argmax_k, "G =", enum.argmax_g)
problems = check_enumeration(enum, table)
print("matches the published table" if not problems else problems)

# %%
# Beyond the table: the next members up to k = 400 (not in the paper).
more = enumerate_u1(400, xi, table)
print("\nk_m up to 400:", [r.k_m for r in more.records])
