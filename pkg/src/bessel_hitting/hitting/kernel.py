r"""The branch-cut kernel :math:`L_{\mu,c}` and the integrals built on it.

.. math::

    L_{\mu,c}(x) = \cos(\pi\mu)\,
    \frac{I_\mu(cx)K_\mu(x) - I_\mu(x)K_\mu(cx)}
         {K_\mu(x)^2 + \pi^2 I_\mu(x)^2 + 2\pi\sin(\pi\mu)K_\mu(x)I_\mu(x)}

Every integral in the outward solver has the form
:math:`\int_0^\infty L_{\mu,c}(x)e^{-(c-1)x}x^{-p}g(x)\,dx`.
The damped kernel :math:`L e^{-(c-1)x}` decays like :math:`e^{-2x}`, which
fixes the truncation point.  Near the origin :math:`L \sim x^{2\mu}` (and
:math:`\log c/(\log x)^2` for :math:`\mu = 0`), handled by a change of
variables that makes the integrand bounded.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from .query import QuadratureSpec

__all__ = ["damped_kernel", "kernel_integral", "l_kernel"]

EULER_GAMMA = 0.57721566490153286061
LOG2 = math.log(2.0)
# below this x the mu = 0 kernel is replaced by its logarithmic expansion
MU0_SMALL_X = 1e-10


def _kernel_small(mu: float, c: float, x: float) -> float:
    """L via ratios normalised by K_mu(x)^2 (stable for x <= 1)."""
    kx = special.kv(mu, x)
    ix = special.iv(mu, x)
    kc = special.kv(mu, c * x)
    ic = special.iv(mu, c * x)
    r = ix / kx
    num = ic / kx - r * (kc / kx)
    den = 1.0 + math.pi ** 2 * r * r + 2.0 * math.pi * math.sin(math.pi * mu) * r
    return math.cos(math.pi * mu) * num / den


def _damped_large(mu: float, c: float, x: float) -> float:
    """``L(x) exp(-(c-1)x)`` from exponentially scaled Bessel values."""
    kx = special.kve(mu, x)
    ix = special.ive(mu, x)
    kc = special.kve(mu, c * x)
    ic = special.ive(mu, c * x)
    e2 = math.exp(-2.0 * x)
    num = ic * kx - ix * kc * math.exp(-2.0 * (c - 1.0) * x)
    den = (math.pi ** 2 * ix * ix + 2.0 * math.pi * math.sin(math.pi * mu) * kx * ix * e2
           + kx * kx * e2 * e2)
    return math.cos(math.pi * mu) * num * e2 / den


def _underflows(mu: float, x: float) -> bool:
    return mu > 0 and mu * math.log(2.0 / x) + math.lgamma(mu) > 700.0


def _cos_vanishes(mu: float) -> bool:
    return abs(math.fmod(mu, 1.0) - 0.5) < 1e-15


def damped_kernel(mu: float, c: float, x: float) -> float:
    """``L_{mu,c}(x) exp(-(c-1) x)`` for ``x > 0``."""
    if _cos_vanishes(mu):
        return 0.0
    if x <= 1.0:
        if _underflows(mu, x):
            return 0.0
        if mu == 0.0 and x < MU0_SMALL_X:
            y = -1.0 / math.log(x)
            return _mu0_over_y2(c, y) * y * y
        return _kernel_small(mu, c, x) * math.exp(-(c - 1.0) * x)
    return _damped_large(mu, c, x)


def l_kernel(mu: float, c: float, x: float) -> float:
    """The kernel ``L_{mu,c}(x)``; ``mu >= 0``, ``c > 1``, ``x > 0``.

    Large arguments go through exponentially scaled Bessel functions, so
    the value stays finite where ``I_mu(cx)`` alone would overflow.

    Examples
    --------
    >>> l_kernel(0.5, 2.0, 1.0)
    0.0
    """
    if mu < 0:
        raise ValueError("l_kernel expects mu >= 0")
    if not c > 1:
        raise ValueError("l_kernel expects c > 1")
    if not x > 0:
        raise ValueError("l_kernel expects x > 0")
    if _cos_vanishes(mu):
        return 0.0
    if x <= 1.0:
        if _underflows(mu, x):
            return 0.0
        if mu == 0.0 and x < MU0_SMALL_X:
            y = -1.0 / math.log(x)
            return _mu0_over_y2(c, y) * y * y
        return _kernel_small(mu, c, x)
    d = _damped_large(mu, c, x)
    lg = (c - 1.0) * x
    if d == 0.0:
        return 0.0
    if lg + math.log(abs(d)) > 709.0:
        return math.copysign(math.inf, d)
    return d * math.exp(lg)


def _mu0_over_y2(c: float, y: float) -> float:
    """``L_{0,c}(x)/y^2`` at ``x = exp(-1/y)`` from the small-x expansion."""
    s = 1.0 + y * (LOG2 - EULER_GAMMA)
    return math.log(c) / (s * s + (math.pi * y) ** 2)


def kernel_integral(mu: float, c: float, g=None, p: int = 1,
                    spec: QuadratureSpec | None = None,
                    scale: float | None = None) -> tuple[float, float]:
    r"""Integral of ``L_{mu,c}(x) exp(-(c-1)x) x^{-p} g(x)`` over ``(0, inf)``.

    Parameters
    ----------
    mu, c : float
        Kernel order (``mu >= 0``) and ratio (``c > 1``).
    g : callable, optional
        Bounded real weight; defaults to 1.
    p : int
        Power of ``1/x``.  Requires ``2 mu - p + 1 > 0`` (or ``mu = 0``,
        ``p = 1``) for integrability at the origin.
    spec : QuadratureSpec, optional
    scale : float, optional
        Length scale on which ``g`` varies; used as a breakpoint.

    Returns
    -------
    value, abserr : float
    """
    spec = spec or QuadratureSpec()
    if _cos_vanishes(mu):
        return 0.0, 0.0
    if g is None:
        def g(x):
            return 1.0
    q = 2.0 * mu - p + 1.0
    log_c = mu == 0.0 and p == 1
    if not log_c and not q > 0:
        raise ValueError(f"kernel integral with mu={mu}, p={p} diverges at the origin")

    x1 = 0.5
    X = spec.x_max
    opts = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdivisions)
    marks = []
    if scale is not None and scale > 0:
        marks = [s for s in (0.1 * scale, scale, 10.0 * scale) if 0 < s < X]
    total = 0.0
    err = 0.0

    # (0, x1]
    if log_c:
        def h(y):
            if y <= 0:
                return math.log(c) * g(0.0)
            x = math.exp(-1.0 / y)
            if x < MU0_SMALL_X:
                return _mu0_over_y2(c, y) * math.exp(-(c - 1.0) * x) * g(x)
            return damped_kernel(0.0, c, x) / (y * y) * g(x)
        y1 = -1.0 / math.log(x1)
        pts = sorted({-1.0 / math.log(s) for s in marks if s < x1})
        v, e = integrate.quad(h, 0.0, y1, points=pts or None, **opts)
    elif q < 1.0:
        def h(y):
            if y <= 0:
                return 0.0
            x = y ** (1.0 / q)
            return damped_kernel(mu, c, x) * x ** (1.0 - q - p) / q * g(x)
        pts = sorted({s ** q for s in marks if s < x1})
        v, e = integrate.quad(h, 0.0, x1 ** q, points=pts or None, **opts)
    else:
        def h(x):
            if x <= 0:
                return 0.0
            return damped_kernel(mu, c, x) * x ** (-p) * g(x)
        pts = sorted(s for s in marks if s < x1)
        v, e = integrate.quad(h, 0.0, x1, points=pts or None, **opts)
    total += v
    err += e

    # [x1, X]
    def h2(x):
        return damped_kernel(mu, c, x) * x ** (-p) * g(x)
    pts = sorted(s for s in marks if x1 < s < X)
    v, e = integrate.quad(h2, x1, X, points=pts or None, **opts)
    total += v
    # the discarded tail is bounded by exp(-2X)/2 times sup|g|
    err += e + math.exp(-spec.x_truncation_decay * X) / spec.x_truncation_decay
    return total, err


def kernel_integral_complex(mu: float, c: float, g, p: int = 1,
                            spec: QuadratureSpec | None = None,
                            scale: float | None = None) -> tuple[complex, float]:
    """:func:`kernel_integral` for a complex weight ``g`` (parts done separately)."""
    re, e1 = kernel_integral(mu, c, lambda x: g(x).real, p, spec, scale)
    im, e2 = kernel_integral(mu, c, lambda x: g(x).imag, p, spec, scale)
    return complex(re, im), math.hypot(e1, e2)


def kernel_samples(mu: float, c: float, xs) -> np.ndarray:
    """Vector of :func:`l_kernel` values (convenience for plotting)."""
    return np.array([l_kernel(mu, c, float(x)) for x in xs])
