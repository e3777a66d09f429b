"""Hitting times of levels above the start (Kent series) and of the origin."""

from __future__ import annotations

import math
import threading
import warnings

import numpy as np
from scipy import special

from ..specfun import bessel_j, gamma_fn
from ..zeros import j_zero_table
from .query import HittingQuery, QuadratureSpec, Regime, RegimeError

__all__ = [
    "SlowConvergenceWarning",
    "cdf_from_origin",
    "cdf_inward",
    "cdf_to_origin",
    "kent_series",
]

MAX_TERMS = 100_000
SMALL_T_RATIO = 1e-3


class SlowConvergenceWarning(UserWarning):
    """The eigenfunction series needs many terms at this time."""


class _KentCoefficients:
    """Lazily extended zeros and coefficients ``c_k`` of one series.

    The series is ``F(t) = base - sum_k c_k exp(-j_k^2 t / (2 b^2))``.
    """

    def __init__(self, order: float, coeff):
        self.order = order
        self.coeff = coeff
        self.zeros = np.empty(0)
        self.c = np.empty(0)
        self.lock = threading.Lock()

    def ensure(self, n: int):
        with self.lock:
            if len(self.zeros) >= n:
                return self.zeros[:n], self.c[:n]
            n_new = max(n, 2 * len(self.zeros), 32)
            js = np.array(j_zero_table(self.order, n_new))
            cs = self.c.tolist()
            for j in js[len(cs):]:
                cs.append(self.coeff(float(j)))
            self.zeros, self.c = js, np.array(cs)
            return self.zeros[:n], self.c[:n]


_SERIES: dict = {}
_SERIES_GUARD = threading.Lock()


def _series_for(q: HittingQuery) -> tuple[float, _KentCoefficients]:
    a, b, nu = q.a, q.b, q.nu.nu
    key = (a, b, nu)
    with _SERIES_GUARD:
        hit = _SERIES.get(key)
        if hit is not None:
            return hit
    if q.regime is Regime.FROM_ORIGIN:
        norm = 2.0 ** (nu - 1.0) * gamma_fn(nu + 1.0)

        def coeff(j):
            return j ** (nu - 1.0) / bessel_j(nu + 1.0, j) / norm
        base, order = 1.0, nu
    elif nu > -1:
        pref = 2.0 * (b / a) ** nu

        def coeff(j):
            return pref * bessel_j(nu, a * j / b) / (j * bessel_j(nu + 1.0, j))
        base, order = 1.0, nu
    else:
        pref = 2.0 * (b / a) ** nu

        def coeff(j):
            return pref * bessel_j(-nu, a * j / b) / (j * bessel_j(-nu + 1.0, j))
        base, order = (b / a) ** (2.0 * nu), -nu
    hit = (base, _KentCoefficients(order, coeff))
    with _SERIES_GUARD:
        return _SERIES.setdefault(key, hit)


def _envelope(cs) -> float:
    # individual coefficients can vanish (e.g. J_{1/2}(k pi/2) for even k),
    # so bound the tail with the largest of the trailing ones
    return float(np.max(np.abs(cs[-8:])))


def kent_series(q: HittingQuery, t: float, spec: QuadratureSpec | None = None,
                k_terms: int | None = None) -> tuple[float, float, int]:
    """Evaluate the eigenfunction series for a FromOrigin or Inward query.

    Parameters
    ----------
    q : HittingQuery
    t : float
    spec : QuadratureSpec, optional
        ``abs_tol`` sets the truncation target when ``k_terms`` is omitted.
    k_terms : int, optional
        Fixed number of terms.

    Returns
    -------
    value, tail_bound, terms_used
    """
    if not t > 0:
        raise ValueError("t must be positive")
    spec = spec or QuadratureSpec()
    b = q.b
    tau = t / (2.0 * b * b)
    if t / (b * b) < SMALL_T_RATIO and k_terms is None:
        warnings.warn(
            f"t/b^2={t / b**2:.3g}: series converges slowly, capped at {MAX_TERMS} terms",
            SlowConvergenceWarning, stacklevel=3)
    base, series = _series_for(q)
    if k_terms is not None:
        js, cs = series.ensure(int(k_terms))
        terms = cs * np.exp(-js * js * tau)
        jn = js[-1] + math.pi
        bound = _envelope(cs) * math.exp(-jn * jn * tau) / (-math.expm1(-2.0 * math.pi * jn * tau))
        return base - float(np.sum(terms[::-1])), bound, len(js)
    # terms decay at least like exp(-j^2 tau); choose n with a geometric tail bound
    n = 32
    while True:
        js, cs = series.ensure(n)
        jn = js[-1]
        ratio = math.exp(-math.pi * (2.0 * jn + math.pi) * tau)
        env = _envelope(cs)
        last = env * math.exp(-jn * jn * tau)
        bound = last * ratio / (1.0 - ratio) if ratio < 1 else math.inf
        if bound < 0.1 * spec.abs_tol or n >= MAX_TERMS:
            break
        # j_k ~ k pi: size the next batch from the required decay
        need = math.sqrt(max(math.log(max(env, 1e-300) / (0.01 * spec.abs_tol)), 1.0) / tau)
        n = min(MAX_TERMS, max(2 * n, int(need / math.pi) + 8))
    terms = cs * np.exp(-js * js * tau)
    return base - float(np.sum(terms[::-1])), bound, len(js)


def cdf_from_origin(q: HittingQuery, t: float, k_terms: int | None = None,
                    spec: QuadratureSpec | None = None) -> float:
    """``P(tau_{0,b} <= t)`` for ``nu > -1`` by the Bessel-zero series."""
    if q.regime is not Regime.FROM_ORIGIN:
        raise RegimeError("cdf_from_origin needs a=0<b")
    return kent_series(q, t, spec, k_terms)[0]


def cdf_inward(q: HittingQuery, t: float, k_terms: int | None = None,
               spec: QuadratureSpec | None = None) -> float:
    """``P(tau_{a,b} <= t)`` for ``0 < a <= b``.

    For ``nu <= -1`` the law is defective with mass ``(b/a)^{2 nu}``.
    """
    if q.regime is not Regime.INWARD:
        raise RegimeError("cdf_inward needs 0<a<=b")
    if not t > 0:
        raise ValueError("t must be positive")
    if q.a == q.b:
        return 1.0
    return kent_series(q, t, spec, k_terms)[0]


def cdf_to_origin(q: HittingQuery, t: float) -> float:
    """``P(tau_{a,0} <= t)`` for ``nu < 0``.

    ``tau_{a,0}`` is inverse-gamma with shape ``|nu|`` and scale ``a^2/2``,
    so the CDF is the regularised upper incomplete gamma ``Q(|nu|, a^2/2t)``.
    """
    if q.regime is not Regime.TO_ORIGIN:
        raise RegimeError("cdf_to_origin needs b=0<a")
    if not t > 0:
        raise ValueError("t must be positive")
    return float(special.gammaincc(-q.nu.nu, q.a * q.a / (2.0 * t)))
