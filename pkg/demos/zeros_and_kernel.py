"""
Zeros of K_nu and the branch-cut kernel
=======================================

K_nu has finitely many zeros, all in the left half-plane.  Together with
a real kernel on the positive axis they decompose the ratio
K_nu(c w) / K_nu(w), which drives the outward hitting-time formulas.
"""

import numpy as np

from bessel_hitting.hitting import l_kernel, ratio_decomposition
from bessel_hitting.specfun import bessel_k_complex
from bessel_hitting.zeros import count_k_zeros, find_k_zeros

# zero counts grow roughly like |nu|
for nu in (1.2, 1.5, 2.0, 2.5, 3.3, 4.5, 6.7):
    zs = find_k_zeros(nu)
    upper = [z for z in zs if z.imag >= 0]
    shown = ", ".join(f"{z.real:.6f}{z.imag:+.6f}i" for z in upper)
    print(f"nu={nu:4}  N={count_k_zeros(nu)}  upper half: {shown or '-'}")

# the kernel vanishes at half-integers and decays like x^{2 mu} near 0
xs = np.array([1e-3, 1e-2, 0.1, 1.0, 5.0])
print("\n  mu  " + "".join(f"{x:>12g}" for x in xs))
for mu in (0.0, 0.3, 0.5, 1.2, 2.7):
    print(f"{mu:4}  " + "".join(f"{l_kernel(mu, 2.0, x):12.4e}" for x in xs))

# decomposition against the direct quotient
print()
for nu in (0.8, 2.5, 2.7):
    w = 1.5 + 0.5j
    direct = bessel_k_complex(nu, 2 * w) / bessel_k_complex(nu, w)
    dec = ratio_decomposition(nu, 2.0, w)
    print(f"nu={nu}: decomposition {dec:.12f}  |diff| {abs(dec - direct):.1e}")
