"""Concordance checks between the exact formulas and the oracles.

Each check returns :class:`CheckRow` records ``(cell, method, sup_gap,
budget, passed)``; :func:`default_matrix` runs the full verification set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .hitting import (
    HittingQuery,
    Regime,
    cdf,
    ratio_decomposition,
    survival,
    survival_excess,
    tail_asymptotic,
    tail_coefficients,
)
from .oracle import InversionSpec, McSpec, invert_transform, ks_distance, simulate_hitting
from .specfun import bessel_i, bessel_k_complex, bessel_k_real
from .zeros import find_k_zeros

__all__ = [
    "CheckRow",
    "check_decomposition",
    "check_inversion",
    "check_monte_carlo",
    "default_matrix",
    "log_grid",
]


@dataclass(frozen=True)
class CheckRow:
    cell: str
    method: str
    sup_gap: float
    budget: float
    passed: bool


def _row(cell, method, gap, budget):
    return CheckRow(cell, method, float(gap), float(budget), bool(gap <= budget))


def log_grid(q: HittingQuery, count: int = 30) -> np.ndarray:
    """``count`` log-spaced times in ``[0.01, 100] * L^2`` with ``L = |a-b|``."""
    L = abs(q.a - q.b) or 1.0
    return np.logspace(-2, 2, count) * L * L


def _label(q: HittingQuery) -> str:
    return f"{q.regime.value}(nu={q.nu.nu:g},a={q.a:g},b={q.b:g})"


def inversion_budget(q: HittingQuery) -> float:
    if q.regime is Regime.TO_ORIGIN:
        return 1e-9
    if q.regime is Regime.OUTWARD and not q.nu.is_half_integer:
        return 1e-5
    return 1e-6


def check_inversion(q: HittingQuery, times=None, budget: float | None = None) -> CheckRow:
    """Sup-gap between the exact CDF and Talbot inversion on a grid."""
    times = log_grid(q) if times is None else times
    spec = InversionSpec("talbot")
    gap = max(abs(cdf(q, float(t)) - invert_transform(q, spec, float(t))) for t in times)
    return _row(_label(q), "oracle-inversion", gap, budget or inversion_budget(q))


def check_monte_carlo(q: HittingQuery, paths: int = 100_000, seed: int = 20240601,
                      t_max: float | None = None, disc_budget: float = 0.002) -> CheckRow:
    """KS distance to the empirical CDF against the DKW band plus a discretisation budget."""
    L = abs(q.a - q.b) or q.b or 1.0
    t_max = t_max or 100.0 * L * L
    res = simulate_hitting(q, McSpec(paths=paths, t_max=t_max, seed=seed))
    grid = np.logspace(-2, 2, 400) * L * L
    grid = grid[grid <= t_max]
    ks = ks_distance(res, lambda t: cdf(q, t), grid)
    return _row(_label(q), f"oracle-mc[{res.sampler}]", ks, res.band + disc_budget)


def check_decomposition(nu: float, c: float, w: complex, budget: float) -> CheckRow:
    direct = bessel_k_complex(nu, c * w) / bessel_k_complex(nu, w)
    dec = ratio_decomposition(nu, c, w)
    return _row(f"ratio(nu={nu:g},c={c:g},w={w})", "decomposition",
                abs(dec - direct) / abs(direct), budget)


def _specfun_rows() -> list[CheckRow]:
    rows = []
    worst = 0.0
    for nu in (0.3, 1.5, 2.7):
        for x in (0.5, 3.0, 20.0):
            # I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x
            lhs = (bessel_i(nu, x, True) * bessel_k_real(nu + 1, x, True)
                   + bessel_i(nu + 1, x, True) * bessel_k_real(nu, x, True))
            worst = max(worst, abs(lhs * x - 1.0))
    rows.append(_row("wronskian", "specfun", worst, 1e-12))
    worst = 0.0
    for nu in (2.0, 2.5, 3.7):
        for z in find_k_zeros(nu):
            worst = max(worst, abs(bessel_k_complex(nu, z)))
    rows.append(_row("k-zero-residuals", "zeros", worst, 1e-10))
    return rows


def default_matrix(include_mc: bool = True) -> list[CheckRow]:
    """Run every verification cell."""
    rows: list[CheckRow] = []
    for nu in (0.5, 1.5, 2.5, 3.5, 0.3, 0.8, 2.0, 2.7):
        tol = 1e-10 if abs(math.fmod(nu, 1.0) - 0.5) < 1e-12 else 1e-6
        gap = 0.0
        for c in (1.5, 2.0, 4.0):
            for w in (1.0, 2 + 1j, 0.5 - 0.3j):
                gap = max(gap, check_decomposition(nu, c, w, tol).sup_gap)
        rows.append(_row(f"ratio(nu={nu:g})", "decomposition", gap, tol))
    for nu, a, b in ((-0.5, 2, 1), (0.5, 2, 1), (2.5, 2, 1), (-2.5, 3, 1),
                     (0.8, 3, 1), (-2.3, 2, 1), (0.0, math.e, 1)):
        rows.append(check_inversion(HittingQuery(a, b, nu)))
    for nu, a, b in ((0.5, 0, 1), (0.0, 0, 1), (0.5, 1, 2), (-2.0, 1, 2)):
        rows.append(check_inversion(HittingQuery(a, b, nu)))
    q = HittingQuery(1, 2, -2.0)
    rows.append(_row(_label(q) + "@t=1e6", "defective-mass", abs(cdf(q, 1e6) - 1 / 16), 1e-4))
    if include_mc:
        for nu, a, b in ((0.5, 0, 1), (-0.5, 2, 1), (1.0, 3, 1)):
            rows.append(check_monte_carlo(HittingQuery(a, b, nu)))
    for nu, a, b in ((-2.3, 2, 1), (-1.7, 3, 1)):
        q = HittingQuery(a, b, nu)
        tc = tail_coefficients(q)
        cp = (b / a) ** nu
        gap = max(abs(tc.identity_residual(m, cp)) / tc.beta1[m] for m in range(tc.m_max + 1))
        rows.append(_row(_label(q), "tail-identity", gap, 1e-7))
    q = HittingQuery(2, 1, -2.5)
    tc = tail_coefficients(q)
    cp = 0.5 ** -2.5
    gap = max(abs(tc.beta1[m] + cp * tc.beta2[m]) / tc.beta1[m] for m in range(tc.m_max))
    rows.append(_row(_label(q), "tail-identity", gap, 1e-9))
    for nu in (-2.5, -0.8):
        q = HittingQuery(2, 1, nu)
        ratio = survival(q, 1e4) / tail_asymptotic(q, 1e4)
        rows.append(_row(_label(q), "tail-ratio", abs(ratio - 1.0), 0.02))
    q = HittingQuery(math.e, 1, 0.0)
    t = 1e8
    rows.append(_row(_label(q), "tail-log", abs(survival(q, t) * math.log(t) / 2 - 1.0), 0.1))
    for nu in (0.5, 2.5, 0.8, 2.3):
        q = HittingQuery(2, 1, nu)
        fit = [survival_excess(q, t) * t ** nu for t in (1e3, 1e4)]
        rows.append(_row(_label(q), "tail-excess-bounded",
                         abs(fit[1] - fit[0]) / abs(fit[1]), 0.05))
    for nu, scale in ((-0.5, 1.0), (0.5, 0.5)):
        q = HittingQuery(2, 1, nu)
        gap = max(abs(cdf(q, float(t)) - scale * special.erfc(1 / math.sqrt(2 * t)))
                  for t in log_grid(q))
        rows.append(_row(_label(q), "closed-form", gap, 1e-12))
    rows.extend(_specfun_rows())
    rows.append(check_inversion(HittingQuery(2, 0, -1.3)))
    return rows

