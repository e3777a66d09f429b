"""Exact laws of first hitting times of Bessel processes.

Subpackages
-----------
specfun
    Modified Bessel functions of complex argument, J_nu, psi_nu polynomials.
zeros
    Zeros of K_nu and J_nu.
hitting
    Transforms, distribution functions and tail asymptotics.
oracle
    Laplace inversion and Monte Carlo reference values.
verification
    Concordance checks between exact formulas and oracles.
cli
    Command-line front end (``python3 -m bessel_hitting``).
"""

from .hitting import (
    DistributionCurve,
    HittingQuery,
    QuadratureSpec,
    Regime,
    RegimeError,
    cdf,
    distribution_curve,
    laplace_hitting,
    survival,
    tail_asymptotic,
    tail_coefficients,
)
from .specfun import Index
from .zeros import count_k_zeros, find_j_zeros, find_k_zeros

__version__ = "0.1.0"

__all__ = [
    "DistributionCurve",
    "HittingQuery",
    "Index",
    "QuadratureSpec",
    "Regime",
    "RegimeError",
    "cdf",
    "count_k_zeros",
    "distribution_curve",
    "find_j_zeros",
    "find_k_zeros",
    "laplace_hitting",
    "survival",
    "tail_asymptotic",
    "tail_coefficients",
]
