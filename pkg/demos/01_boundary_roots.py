"""
Boundary roots xi(p, alpha)
===========================

Whether multiplying N by a prime p raises G(N) = sigma(N)/(N log log N)
depends only on log N and the exponent alpha of p in N: it does exactly
when log N > xi(p, alpha).  This script tabulates a few roots, their
a-priori brackets, and the segments of log N on which N is stable under
both multiplying and dividing by p.
"""

import math

from gronwall_u1.improvability import gp_interval, junction_interval
from gronwall_u1.xi import XiTable, lam, xi_bounds

xi = XiTable()

print("p  alpha  lambda        bracket                      xi")
for p in (2, 3, 5, 23, 29):
    for alpha in (0, 1, 2):
        lo, hi = xi_bounds(p, alpha)
        v = xi.get(p, alpha)
        print(f"{p:<3}{alpha:<7}{lam(p, alpha):<14.10f}({lo:11.4f}, {hi:11.4f})   {v.value:.10f}")

# %%
# For p = 2 the stable segments are disjoint and separated by junction gaps.
# Landing in a gap means N*2, not N, is the stable choice.
print("\nalpha  stable segment for p=2        junction gap")
for alpha in range(1, 7):
    lo, hi = gp_interval(2, alpha, xi)
    g_lo, g_hi = junction_interval(2, alpha, xi)
    print(f"{alpha:<7}[{lo:9.4f}, {hi:9.4f}]          ({g_lo:9.4f}, {g_hi:9.4f})")

# %%
# The text of the construction quotes "xi(2,1) + log 2 = 2.56..".  The number
# printed there is xi(2, 0) + log 2; with alpha = 1 the value is 3.91.
print("\nxi(2,0) + log 2 =", xi(2, 0) + math.log(2))
print("xi(2,1) + log 2 =", xi(2, 1) + math.log(2))
