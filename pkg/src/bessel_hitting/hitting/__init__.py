"""Distribution functions, transforms and tail asymptotics of Bessel hitting times."""

from .api import cdf, distribution_curve, evaluate, survival
from .inward import SlowConvergenceWarning, cdf_from_origin, cdf_inward, cdf_to_origin, kent_series
from .kernel import damped_kernel, kernel_integral, l_kernel
from .outward import (
    cdf_outward,
    inv_laplace_p1,
    inv_laplace_p2,
    psi1,
    psi2,
    psi2_quadrature,
    psi3,
    survival_excess,
    survival_outward,
)
from .query import (
    DistributionCurve,
    HittingQuery,
    QuadratureSpec,
    Regime,
    RegimeError,
    TailCoefficients,
    snap_index,
)
from .tail import m_of, tail_asymptotic, tail_case, tail_coefficients
from .transforms import laplace_hitting, ratio_decomposition

__all__ = [
    "DistributionCurve",
    "HittingQuery",
    "QuadratureSpec",
    "Regime",
    "RegimeError",
    "SlowConvergenceWarning",
    "TailCoefficients",
    "cdf",
    "cdf_from_origin",
    "cdf_inward",
    "cdf_outward",
    "cdf_to_origin",
    "damped_kernel",
    "distribution_curve",
    "evaluate",
    "inv_laplace_p1",
    "inv_laplace_p2",
    "kent_series",
    "kernel_integral",
    "l_kernel",
    "laplace_hitting",
    "m_of",
    "psi1",
    "psi2",
    "psi2_quadrature",
    "psi3",
    "ratio_decomposition",
    "snap_index",
    "survival",
    "survival_excess",
    "survival_outward",
    "tail_asymptotic",
    "tail_case",
    "tail_coefficients",
]
