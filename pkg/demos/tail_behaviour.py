"""
Large-time tails
================

The survival function of an outward hitting time decays like a power of
t (or like 1/log t in dimension two).  We print the exact survival next
to its leading-order approximation.
"""

import math

from bessel_hitting import HittingQuery, survival
from bessel_hitting.hitting import survival_excess, tail_asymptotic

cases = [("nu=-5/2", HittingQuery(2, 1, -2.5)),
         ("nu=-0.8", HittingQuery(2, 1, -0.8)),
         ("nu=0, a=e", HittingQuery(math.e, 1, 0.0))]
for label, q in cases:
    print(label)
    for t in (1e2, 1e4, 1e6):
        s, approx = survival(q, t), tail_asymptotic(q, t)
        print(f"  t={t:7.0e}  exact {s:.6e}  leading {approx:.6e}  ratio {s / approx:.5f}")

# for nu > 0 the survival tends to 1 - (b/a)^{2 nu}; the excess decays like t^-nu
q = HittingQuery(2, 1, 0.8)
print("\nnu=0.8: t^nu * P(t < tau < inf)")
for t in (1e2, 1e3, 1e4, 1e5):
    print(f"  t={t:7.0e}  {survival_excess(q, t) * t ** 0.8:.6f}")
