"""Large-time behaviour of the outward survival function."""

from __future__ import annotations

import cmath
import math

from ..specfun import gamma_fn
from ..zeros import k_zero_set
from .kernel import kernel_integral
from .query import HittingQuery, QuadratureSpec, Regime, RegimeError, TailCoefficients

__all__ = ["m_of", "tail_asymptotic", "tail_coefficients", "tail_case"]


def m_of(nu: float) -> int:
    """Greatest integer not exceeding ``|nu| - 1/2``."""
    return math.floor(abs(nu) - 0.5 + 1e-12)


def _beta_z(m: int, z: complex, a: float, b: float) -> complex:
    r = z * (a - b) / b
    poly = sum((-r) ** k / math.factorial(k) for k in range(2 * m + 1))
    return -math.factorial(2 * m) * (b / z) ** (2 * m + 1) * cmath.exp(r) * poly


def tail_coefficients(q: HittingQuery, spec: QuadratureSpec | None = None) -> TailCoefficients:
    """Coefficients of the ``t^{-(m+1/2)}`` expansion for ``m = 0..m(nu)``.

    ``beta1(m) = (a-b)^{2m+1}/(2m+1)``; ``beta2`` sums the zero
    contributions with residue weights; ``beta3`` integrates the branch-cut
    kernel against ``x^{-(2m-k+2)}``.  For half-integer orders ``beta3`` is
    empty and ``sigma1``/``sigma2`` are filled in.
    """
    if q.regime is not Regime.OUTWARD:
        raise RegimeError("tail coefficients need 0<b<a")
    a, b = q.a, q.b
    mu = q.nu.abs_nu
    mm = m_of(mu)
    zs = k_zero_set(mu)
    pairs = list(zip(zs.zeros, zs.residue_weights(q.alpha)))
    beta1, beta2, beta3 = {}, {}, {}
    r = (a - b) / b
    for m in range(mm + 1):
        beta1[m] = (a - b) ** (2 * m + 1) / (2 * m + 1)
        s = sum((w * _beta_z(m, z, a, b) for z, w in pairs), 0j)
        beta2[m] = s.real
        if not q.nu.is_half_integer:
            tot = 0.0
            for k in range(2 * m + 1):
                v, _ = kernel_integral(mu, q.alpha, p=2 * m - k + 2, spec=spec)
                tot += r ** k / math.factorial(k) * v
            beta3[m] = math.factorial(2 * m) * b ** (2 * m + 1) * tot
    sigma1 = sigma2 = None
    if q.nu.is_half_integer:
        n2 = int(round(2 * mu))
        sigma1 = (a - b) ** n2 / n2
        if mu == 0.5:
            sigma2 = 0.0
        else:
            s = 0j
            for z, w in pairs:
                rz = z * r
                poly = sum((-rz) ** k / math.factorial(k) for k in range(n2))
                s += w / z ** n2 * cmath.exp(rz) * poly
            sigma2 = (b ** n2 * math.factorial(n2 - 1) * s).real
    return TailCoefficients(m_max=mm, beta1=beta1, beta2=beta2, beta3=beta3,
                            sigma1=sigma1, sigma2=sigma2)


def tail_case(q: HittingQuery) -> int:
    """Which of the five large-time regimes applies (1..5)."""
    nu = q.nu.nu
    if nu == 0:
        return 1
    if q.nu.is_half_integer:
        return 2 if nu > 0 else 3
    return 4 if nu > 0 else 5


def tail_asymptotic(q: HittingQuery, t: float, coeffs: TailCoefficients | None = None) -> float:
    """Leading large-``t`` approximation of ``P(tau_{a,b} > t)``.

    For ``nu > 0`` the approximation includes the constant
    ``1 - (b/a)^{2 nu}`` (mass escaping to infinity).  In the half-integer
    cases the zero-sum coefficient ``sigma2`` enters with a minus sign.
    """
    if q.regime is not Regime.OUTWARD:
        raise RegimeError("tail asymptotics need 0<b<a")
    if not t > 0:
        raise ValueError("t must be positive")
    a, b, nu = q.a, q.b, q.nu.nu
    case = tail_case(q)
    if case == 1:
        return 2.0 * math.log(a / b) / math.log(t)
    if case in (2, 3):
        coeffs = coeffs or tail_coefficients(q)
        n = int(round(abs(nu) - 0.5))
        lead = math.sqrt(2.0 / math.pi) * (-0.5) ** n / math.factorial(n)
        if case == 2:
            c2 = (b / a) ** (2 * nu)
            return 1.0 - c2 + c2 * lead * (coeffs.sigma1 - (a / b) ** nu * coeffs.sigma2) * t ** (-nu)
        return lead * (coeffs.sigma1 - (b / a) ** nu * coeffs.sigma2) * t ** nu
    if case == 4:
        return (1.0 - (b / a) ** (2 * nu)
                + (b ** 3 / (2 * a)) ** nu * ((a / b) ** nu - (b / a) ** nu)
                / (gamma_fn(1.0 + nu) * t ** nu))
    return (2.0 / (a * b)) ** nu * ((b / a) ** nu - (a / b) ** nu) * t ** nu / gamma_fn(1.0 - nu)
