"""Regime dispatch: one entry point per quantity."""

from __future__ import annotations

import numpy as np

from .inward import cdf_to_origin, kent_series
from .outward import cdf_outward, survival_outward
from .query import DistributionCurve, HittingQuery, QuadratureSpec, Regime

__all__ = ["cdf", "distribution_curve", "evaluate", "survival"]


def evaluate(q: HittingQuery, t: float, spec: QuadratureSpec | None = None,
             survival_form: bool = False) -> tuple[float, float, str]:
    """Value, error estimate and method tag of the CDF (or survival) at ``t``."""
    if not t > 0:
        raise ValueError("t must be positive")
    r = q.regime
    if r is Regime.OUTWARD:
        if survival_form:
            v, e = survival_outward(q, t, spec, return_error=True)
        else:
            v, e = cdf_outward(q, t, spec, return_error=True)
        return v, e, "exact-zeros"
    if r is Regime.TO_ORIGIN:
        v = cdf_to_origin(q, t)
        e = 1e-15
    elif q.a == q.b:
        v, e = 1.0, 0.0
    else:
        v, e, _ = kent_series(q, t, spec)
        e = e + 1e-15
    if survival_form:
        v = 1.0 - v
    return v, e, "exact-series"


def cdf(q: HittingQuery, t: float, spec: QuadratureSpec | None = None) -> float:
    """``P(tau <= t)`` for any regime."""
    return evaluate(q, t, spec)[0]


def survival(q: HittingQuery, t: float, spec: QuadratureSpec | None = None) -> float:
    """``P(tau > t)``; includes the mass that never hits (defective laws)."""
    return evaluate(q, t, spec, survival_form=True)[0]


def distribution_curve(q: HittingQuery, times=None, spec: QuadratureSpec | None = None,
                       survival_form: bool = False) -> DistributionCurve:
    """Evaluate the CDF (or survival function) on a time grid."""
    times = np.asarray(q.times if times is None else times, dtype=float)
    out = [evaluate(q, float(t), spec, survival_form) for t in times]
    vals = [o[0] for o in out]
    errs = [o[1] for o in out]
    method = out[0][2] if out else "exact-series"
    return DistributionCurve(times, vals, errs, method, total_mass=q.total_mass)
