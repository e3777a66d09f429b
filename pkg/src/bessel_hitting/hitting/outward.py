r"""Outward hitting times ``0 < b < a`` via the zeros of ``K_nu``.

With ``u0 = (a-b)/sqrt(t)``, ``c = b/a`` and residue weights
``w_j = K_nu(a z_j/b) / (z_j K_{nu+1}(z_j))`` the survival function is

.. math::

    S(t) = 1 - c^{\nu+|\nu|} + c^{\nu+|\nu|}\Psi_1(t)
           + c^\nu\Bigl[\sum_j w_j\Psi_2(t; z_j) + \Psi_3(t)\Bigr]

where :math:`\Psi_1 = \operatorname{erf}(u_0/\sqrt2)`,
:math:`\Psi_2(t;z) = \sqrt{2/\pi}\int_{u_0}^\infty e^{-u^2/2+z\sqrt t u/b}du`
and :math:`\Psi_3` carries the branch-cut kernel.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from scipy import integrate, special

from ..zeros import k_zero_set
from .kernel import kernel_integral
from .query import HittingQuery, QuadratureSpec, Regime, RegimeError

__all__ = [
    "cdf_outward",
    "inv_laplace_p1",
    "inv_laplace_p2",
    "outward_terms",
    "psi1",
    "psi2",
    "psi2_quadrature",
    "psi3",
    "survival_excess",
    "survival_outward",
]

SQRT2 = math.sqrt(2.0)
IMAG_RESIDUE_TOL = 1e-10


def _check(q: HittingQuery) -> None:
    if q.regime is not Regime.OUTWARD:
        raise RegimeError("outward formulas need 0<b<a")


def _u0(q: HittingQuery, t: float) -> float:
    if not t > 0:
        raise ValueError("t must be positive")
    return (q.a - q.b) / math.sqrt(t)


def psi1(q: HittingQuery, t: float) -> float:
    """``sqrt(2/pi) int_0^{u0} exp(-u^2/2) du = erf(u0/sqrt 2)``."""
    return float(special.erf(_u0(q, t) / SQRT2))


def psi2(q: HittingQuery, t: float, z: complex) -> complex:
    """``sqrt(2/pi) int_{u0}^inf exp(-u^2/2 + z sqrt(t) u / b) du`` for ``Re z < 0``.

    Closed form through the scaled complementary error function.
    """
    z = complex(z)
    if not z.real < 0:
        raise ValueError("psi2 needs Re z < 0")
    u0 = _u0(q, t)
    kappa = z * math.sqrt(t) / q.b
    return complex(special.erfcx((u0 - kappa) / SQRT2)) * cmath.exp(-0.5 * u0 * u0 + kappa * u0)


def psi2_quadrature(q: HittingQuery, t: float, z: complex,
                    spec: QuadratureSpec | None = None) -> complex:
    """:func:`psi2` by direct adaptive quadrature over ``u`` (cross-check path)."""
    spec = spec or QuadratureSpec()
    z = complex(z)
    u0 = _u0(q, t)
    kappa = z * math.sqrt(t) / q.b
    norm = math.sqrt(2.0 / math.pi)

    def f(u, part):
        v = cmath.exp(-0.5 * u * u + kappa * u)
        return v.real if part == 0 else v.imag
    opts = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdivisions)
    re = integrate.quad(f, u0, math.inf, args=(0,), **opts)[0]
    im = integrate.quad(f, u0, math.inf, args=(1,), **opts)[0]
    return norm * complex(re, im)


def psi3(q: HittingQuery, t: float, spec: QuadratureSpec | None = None,
         return_error: bool = False):
    """Branch-cut term.

    ``exp(-u0^2/2) int_0^inf L(x) e^{-(a/b-1)x} / x * erfcx((u0 + x sqrt(t)/b)/sqrt 2) dx``;
    identically zero for half-integer orders.
    """
    _check(q)
    mu = q.nu.abs_nu
    u0 = _u0(q, t)
    if q.nu.is_half_integer:
        return (0.0, 0.0) if return_error else 0.0
    rt = math.sqrt(t) / q.b

    def g(x):
        return float(special.erfcx((u0 + x * rt) / SQRT2))
    val, err = kernel_integral(mu, q.alpha, g, p=1, spec=spec, scale=1.0 / rt)
    pre = math.exp(-0.5 * u0 * u0)
    if return_error:
        return pre * val, pre * err
    return pre * val


@lru_cache(maxsize=256)
def _weights(mu: float, alpha: float):
    zs = k_zero_set(mu)
    return tuple(zip(zs.zeros, zs.residue_weights(alpha)))


def outward_terms(q: HittingQuery, t: float, spec: QuadratureSpec | None = None) -> dict:
    """All pieces of the outward formula at time ``t`` (for diagnostics)."""
    _check(q)
    nu = q.nu.nu
    zsum = 0j
    for z, w in _weights(q.nu.abs_nu, q.alpha):
        zsum += w * psi2(q, t, z)
    if abs(zsum.imag) > IMAG_RESIDUE_TOL * max(1.0, abs(zsum)):
        raise ArithmeticError(f"conjugate-pair sum has imaginary residue {zsum.imag:g}")
    p3, e3 = psi3(q, t, spec, return_error=True)
    return {
        "psi1": psi1(q, t),
        "erfc": float(special.erfc(_u0(q, t) / SQRT2)),
        "zero_sum": zsum.real,
        "psi3": p3,
        "psi3_err": e3,
        "c_nu": (q.b / q.a) ** nu,
        "c_mass": (q.b / q.a) ** (nu + abs(nu)),
    }


def _assemble(q, t, spec):
    d = outward_terms(q, t, spec)
    branch = d["c_nu"] * (d["zero_sum"] + d["psi3"])
    err = d["c_nu"] * d["psi3_err"] + 1e-15
    return d, branch, err


def cdf_outward(q: HittingQuery, t: float, spec: QuadratureSpec | None = None,
                return_error: bool = False):
    """``P(tau_{a,b} <= t)`` for ``0 < b < a``.

    Defective for ``nu > 0``: the limit as ``t -> inf`` is ``(b/a)^{2 nu}``.
    """
    d, branch, err = _assemble(q, t, spec)
    val = d["c_mass"] * d["erfc"] - branch
    return (val, err) if return_error else val


def survival_outward(q: HittingQuery, t: float, spec: QuadratureSpec | None = None,
                     return_error: bool = False):
    """``P(tau_{a,b} > t)``, assembled directly so large-t tails keep their digits."""
    d, branch, err = _assemble(q, t, spec)
    val = 1.0 - d["c_mass"] + d["c_mass"] * d["psi1"] + branch
    return (val, err) if return_error else val


def survival_excess(q: HittingQuery, t: float, spec: QuadratureSpec | None = None) -> float:
    """``P(t < tau < inf) = P(tau > t) - (1 - (b/a)^{nu+|nu|})``.

    Avoids the cancellation against the escaping mass when ``nu > 0`` and
    ``t`` is large.
    """
    d, branch, _ = _assemble(q, t, spec)
    return d["c_mass"] * d["psi1"] + branch


def inv_laplace_p1(alpha: float, t: float) -> float:
    """Inverse transform of ``exp(-(alpha-1) sqrt(lambda)) / lambda``.

    ``(pi t)^{-1/2} int_{alpha-1}^inf exp(-xi^2/4t) dxi = erfc((alpha-1)/(2 sqrt t))``.
    """
    if not alpha > 1:
        raise ValueError("alpha must exceed 1")
    if not t > 0:
        raise ValueError("t must be positive")
    return float(special.erfc((alpha - 1.0) / (2.0 * math.sqrt(t))))


def inv_laplace_p2(alpha: float, z: complex, t: float) -> complex:
    """Inverse transform of ``exp(-(alpha-1) sqrt(lambda)) / (sqrt(lambda)(sqrt(lambda) - z))``.

    Equals ``(pi t)^{-1/2} int_{alpha-1}^inf exp(-xi^2/4t + z(xi-alpha+1)) dxi``,
    i.e. ``exp(-A^2) erfcx(A - z sqrt t)`` with ``A = (alpha-1)/(2 sqrt t)``.
    """
    if not alpha > 1:
        raise ValueError("alpha must exceed 1")
    if not t > 0:
        raise ValueError("t must be positive")
    z = complex(z)
    if not z.real < 0:
        raise ValueError("inv_laplace_p2 needs Re z < 0")
    A = (alpha - 1.0) / (2.0 * math.sqrt(t))
    return complex(special.erfcx(A - z * math.sqrt(t))) * math.exp(-A * A)
