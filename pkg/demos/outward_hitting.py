"""
Hitting a lower level
=====================

A Bessel process of index nu started at a drifts outward; the chance it
ever comes down to b < a is (b/a)^{2 nu} when nu > 0.  We evaluate the
distribution of the hitting time three ways and compare.
"""

import numpy as np

from bessel_hitting import HittingQuery, cdf
from bessel_hitting.oracle import McSpec, invert_transform, simulate_hitting

# index 0.8 (dimension 3.6), start at 3, target 1
q = HittingQuery(a=3.0, b=1.0, nu=0.8)
print("regime:", q.regime.value, " total mass:", q.total_mass)

# exact values against numerical Laplace inversion
times = np.logspace(-1, 3, 9)
print(f"{'t':>10} {'exact':>18} {'inversion':>18}")
for t in times:
    print(f"{t:10.3g} {cdf(q, t):18.15f} {invert_transform(q, t=t):18.15f}")

# Monte Carlo: 20k paths with exact noncentral chi-square steps
res = simulate_hitting(q, McSpec(paths=20_000, t_max=1e3, seed=1))
print(f"\nsampler: {res.sampler}, DKW band (99%): {res.band:.4f}")
for t in (1.0, 10.0, 100.0):
    print(f"t={t:6g}  exact {cdf(q, t):.4f}   empirical {float(res.ecdf(t)):.4f}")

# the mass that never arrives
print(f"\nP(tau <= 1e8) = {cdf(q, 1e8):.6f}   (b/a)^(2 nu) = {(1 / 3) ** 1.6:.6f}")
