"""Laplace transforms of hitting times and the K-ratio decomposition."""

from __future__ import annotations

import cmath

from ..specfun import bessel_i_complex, bessel_k_pair, gamma_fn
from ..zeros import k_zero_set
from .kernel import kernel_integral_complex
from .query import HittingQuery, QuadratureSpec, Regime, RegimeError, snap_index

__all__ = ["laplace_hitting", "ratio_decomposition"]


def _sqrt2l(lam) -> complex:
    lam = complex(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if lam.imag == 0 and lam.real < 0:
        raise ValueError("lambda must not lie on the negative real axis")
    return cmath.sqrt(2.0 * lam)


def laplace_hitting(q: HittingQuery, lam):
    r"""``E[exp(-lambda tau)]`` for the hitting time described by ``q``.

    Accepts complex ``lambda`` off the negative real axis (needed by contour
    inversion); returns a float when ``lambda`` is real and positive.

    Examples
    --------
    >>> q = HittingQuery(2.0, 1.0, -0.5)
    >>> round(laplace_hitting(q, 0.5), 12) == round(math.exp(-1.0), 12)
    True
    """
    real_input = isinstance(lam, (int, float)) or (
        hasattr(lam, "imag") and lam.imag == 0)
    if real_input and not complex(lam).real > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    s = _sqrt2l(lam)
    a, b, nu = q.a, q.b, q.nu.nu
    regime = q.regime
    if regime is Regime.INWARD and a == b:
        val = 1.0 + 0j
    elif regime is Regime.FROM_ORIGIN:
        # (bs)^nu / (2^nu Gamma(nu+1) I_nu(bs)); scaled I carries exp(-Re(bs))
        z = b * s
        iv = bessel_i_complex(nu, z, scaled=True)
        val = cmath.exp(nu * cmath.log(z / 2.0) - z.real) / (gamma_fn(nu + 1.0) * iv)
    elif regime is Regime.INWARD:
        order = nu if nu > -1 else -nu
        ia = bessel_i_complex(order, a * s, scaled=True)
        ib = bessel_i_complex(order, b * s, scaled=True)
        val = (b / a) ** nu * ia / ib * cmath.exp((a - b) * s.real)
    elif regime is Regime.TO_ORIGIN:
        # 2^{nu+1} K_nu(as) / (Gamma(|nu|) (as)^nu)
        z = a * s
        kv = bessel_k_pair(-nu, z, scaled=True)[0]
        val = 2.0 ** (nu + 1.0) * kv * cmath.exp(-z - nu * cmath.log(z)) / gamma_fn(-nu)
    elif regime is Regime.OUTWARD:
        ka = bessel_k_pair(abs(nu), a * s, scaled=True)[0]
        kb = bessel_k_pair(abs(nu), b * s, scaled=True)[0]
        val = (b / a) ** nu * ka / kb * cmath.exp(-(a - b) * s)
    else:  # pragma: no cover
        raise RegimeError(f"unsupported regime {regime}")
    if real_input:
        return val.real
    return val


def ratio_decomposition(nu, c: float, w: complex, spec: QuadratureSpec | None = None,
                        return_error: bool = False):
    r"""``K_nu(c w) / K_nu(w)`` from the zero/branch-cut decomposition.

    .. math::

        \frac{K_\nu(cw)}{K_\nu(w)} = e^{-(c-1)w}\Bigl[c^{-|\nu|}
        - \sum_j \frac{w\,e^{(c-1)z_j}K_\nu(cz_j)}{z_j(w-z_j)K_{|\nu|+1}(z_j)}
        - \int_0^\infty \frac{w\,e^{-(c-1)x}L_{|\nu|,c}(x)}{x(x+w)}dx\Bigr]

    The zero sum is empty for ``|nu| < 3/2`` and the integral vanishes for
    half-integer ``nu``.
    """
    nu = snap_index(nu.nu if hasattr(nu, "nu") else float(nu))
    if not c > 1:
        raise ValueError("c must exceed 1")
    w = complex(w)
    if w == 0 or (w.imag == 0 and w.real < 0):
        raise ValueError("w must lie in the cut plane")
    mu = abs(nu)
    zs = k_zero_set(mu)
    bracket = complex(c ** (-mu))
    for z in zs:
        if abs(w - z) < 1e-12 * abs(z):
            raise ValueError(f"w={w} is a zero of K_{nu}")
        kcz = bessel_k_pair(mu, c * z)[0]
        k1 = bessel_k_pair(mu, z)[1]
        bracket -= w * cmath.exp((c - 1.0) * z) * kcz / (z * (w - z) * k1)
    err = 0.0
    if not zs.nu.is_half_integer:
        integral, err = kernel_integral_complex(
            mu, c, lambda x: w / (x + w), p=1, spec=spec, scale=abs(w))
        bracket -= integral
    out = cmath.exp(-(c - 1.0) * w) * bracket
    if return_error:
        return out, err * abs(cmath.exp(-(c - 1.0) * w))
    return out
