"""Zeros of the Macdonald function K_nu and positive zeros of J_nu.

K_nu has finitely many zeros, all simple and in the open left half-plane.
Half-integer orders reduce to polynomial roots of ``psi_nu``; other orders
are located with the argument principle on rectangles in the upper-left
quadrant, refined by Newton's method and completed by conjugation.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .specfun import (
    DELTA_CUT,
    Index,
    bessel_j,
    bessel_k_pair,
    psi_polynomial,
)

__all__ = [
    "JZeroTable",
    "KZeroSet",
    "ZeroSearchError",
    "count_k_zeros",
    "find_j_zeros",
    "find_k_zeros",
    "j_zero_table",
    "k_zero_set",
]

NEWTON_MAXIT = 50
NEWTON_RTOL = 1e-13


class ZeroSearchError(RuntimeError):
    """Raised when a zero search cannot reach the expected count."""


def _as_index(nu) -> Index:
    return nu if isinstance(nu, Index) else Index(float(nu))


def count_k_zeros(nu) -> int:
    """Number N(nu) of zeros of K_nu.

    ``|nu| - 1/2`` when ``nu - 1/2`` is an integer, otherwise the even
    integer closest to ``|nu| - 1/2``.
    """
    idx = _as_index(nu)
    m = idx.abs_nu - 0.5
    if idx.is_half_integer:
        return max(int(round(m)), 0)
    return max(2 * int(round(m / 2.0)), 0)


@dataclass(frozen=True)
class KZeroSet:
    """The zeros of ``K_nu`` (sorted by |Im z|, conjugate pairs adjacent)."""

    nu: Index
    zeros: tuple = ()

    @property
    def count(self) -> int:
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def __len__(self):
        return len(self.zeros)

    def residue_weights(self, alpha: float) -> list[complex]:
        """``K_nu(alpha z_j) / (z_j K_{nu+1}(z_j))`` for every zero ``z_j``.

        Uses ``K_nu = K_{-nu}`` and ``K_{nu+1}(z_j) = K_{|nu|+1}(z_j)`` at zeros.
        """
        if not alpha > 1:
            raise ValueError("alpha must exceed 1")
        mu = self.nu.abs_nu
        out = []
        for z in self.zeros:
            num = bessel_k_pair(mu, alpha * z)[0]
            den = z * bessel_k_pair(mu, z)[1]
            out.append(num / den)
        return out


# ---------------------------------------------------------------------------
# half-integer orders: polynomial roots
# ---------------------------------------------------------------------------

def _polish_poly(poly, z: complex, tol: float) -> complex:
    for _ in range(NEWTON_MAXIT):
        step = poly(z) / poly.derivative(z)
        z -= step
        if abs(step) <= tol * abs(z):
            break
    return z


def _half_integer_zeros(mu: float, tol: float) -> list[complex]:
    poly = psi_polynomial(mu)
    if poly.degree == 0:
        return []
    roots = np.roots(poly.float_coeffs()[::-1])
    out = []
    for r in roots:
        r = complex(r)
        if r.imag < -1e-8 * abs(r):
            continue
        if abs(r.imag) <= 1e-8 * abs(r):
            x = _polish_poly(poly, complex(r.real, 0.0), tol).real
            out.append(complex(x, 0.0))
        else:
            z = _polish_poly(poly, r, tol)
            out.append(z)
            out.append(z.conjugate())
    return out


# ---------------------------------------------------------------------------
# general orders: argument principle
# ---------------------------------------------------------------------------

def _log_deriv(mu: float, z: complex) -> complex:
    k0, k1 = bessel_k_pair(mu, z, scaled=True)
    return mu / z - k1 / k0


def _edge_integral(mu: float, a: complex, b: complex, panels: int) -> complex:
    """Composite Simpson rule for the integral of K'/K along [a, b]."""
    n = 2 * panels
    h = (b - a) / n
    total = _log_deriv(mu, a) + _log_deriv(mu, b)
    for i in range(1, n):
        total += (4 if i % 2 else 2) * _log_deriv(mu, a + i * h)
    return total * h / 3.0


def winding_number(mu: float, x0: float, x1: float, y0: float, y1: float,
                   max_panels: int = 1 << 13) -> int:
    """Number of zeros of K_mu inside the rectangle [x0, x1] x [y0, y1].

    The edge integrals are refined by halving until the estimate is within
    0.1 of an integer and stable between refinements.
    """
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    panels = 8
    prev = None
    while panels <= max_panels:
        total = 0j
        for i in range(4):
            total += _edge_integral(mu, corners[i], corners[(i + 1) % 4], panels)
        w = total / (2j * math.pi)
        near = round(w.real)
        if (abs(w.real - near) < 0.1 and abs(w.imag) < 0.1
                and prev is not None and abs(w - prev) < 0.05):
            return int(near)
        prev = w
        panels *= 2
    raise ZeroSearchError("winding-number quadrature did not settle")


def _newton_k(mu: float, z: complex) -> complex | None:
    for _ in range(NEWTON_MAXIT):
        try:
            step = 1.0 / _log_deriv(mu, z)
        except (ZeroDivisionError, ValueError):
            return None
        z -= step
        if abs(step) <= NEWTON_RTOL * abs(z):
            return z
        if z.imag <= 0 or z.real >= 0:
            return None
    return None


def _search_box(mu, box, count, found, depth=0):
    x0, x1, y0, y1 = box
    if count == 0:
        return
    if count == 1:
        guess = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        z = _newton_k(mu, guess)
        pad = 0.05 * max(x1 - x0, y1 - y0)
        if (z is not None and x0 - pad <= z.real <= x1 + pad
                and y0 - pad <= z.imag <= y1 + pad
                and all(abs(z - f) > 1e-8 * abs(z) for f in found)):
            found.append(z)
            return
    if depth > 40:
        raise ZeroSearchError("zero isolation exceeded subdivision depth")
    # split the longer side slightly off-centre so zeros avoid the new edge
    if x1 - x0 >= y1 - y0:
        xm = x0 + 0.5123 * (x1 - x0)
        halves = [(x0, xm, y0, y1), (xm, x1, y0, y1)]
    else:
        ym = y0 + 0.5123 * (y1 - y0)
        halves = [(x0, x1, y0, ym), (x0, x1, ym, y1)]
    counts = [winding_number(mu, *h) for h in halves]
    if sum(counts) != count:
        raise ZeroSearchError("winding counts of sub-rectangles are inconsistent")
    for h, c in zip(halves, counts):
        _search_box(mu, h, c, found, depth + 1)


def _general_zeros(mu: float, expected: int) -> list[complex]:
    half_count = expected // 2
    extent = mu + 2.0
    for _ in range(4):
        y0 = 2.0 * DELTA_CUT * extent
        box = (-extent, -1e-6, y0, extent)
        n = winding_number(mu, *box)
        if n == half_count:
            upper: list[complex] = []
            _search_box(mu, box, n, upper)
            for z in upper:
                if abs(cmath.phase(z)) >= math.pi - DELTA_CUT:
                    raise ZeroSearchError(f"zero {z} lies inside the branch-cut guard band")
            upper.sort(key=lambda z: (z.imag, z.real))
            out = []
            for z in upper:
                out.extend([z, z.conjugate()])
            return out
        extent *= 1.5
    raise ZeroSearchError(
        f"found {2 * n} zeros of K_{mu}, expected {expected} after expanding the search region")


def find_k_zeros(nu, tol: float = 1e-14) -> KZeroSet:
    """All zeros of ``K_nu`` as a :class:`KZeroSet`."""
    idx = _as_index(nu)
    mu = idx.abs_nu
    expected = count_k_zeros(idx)
    if expected == 0:
        return KZeroSet(nu=idx, zeros=())
    if idx.is_half_integer:
        zs = _half_integer_zeros(round(mu - 0.5) + 0.5, tol)
    else:
        zs = _general_zeros(mu, expected)
    if len(zs) != expected:
        raise ZeroSearchError(f"found {len(zs)} zeros of K_{mu}, expected {expected}")
    zs.sort(key=lambda z: (round(abs(z.imag), 10), z.real, z.imag))
    return KZeroSet(nu=idx, zeros=tuple(zs))


_K_CACHE: dict = {}
_K_LOCKS: dict = {}
_K_GUARD = threading.Lock()


def k_zero_set(nu) -> KZeroSet:
    """Memoised :func:`find_k_zeros`, keyed by ``|nu|``; one computation per key."""
    idx = _as_index(nu)
    key = idx.abs_nu
    hit = _K_CACHE.get(key)
    if hit is None:
        with _K_GUARD:
            lock = _K_LOCKS.setdefault(key, threading.Lock())
        with lock:
            hit = _K_CACHE.get(key)
            if hit is None:
                hit = find_k_zeros(Index(key))
                _K_CACHE[key] = hit
    if hit.nu.nu != idx.nu:
        return KZeroSet(nu=idx, zeros=hit.zeros)
    return hit


# ---------------------------------------------------------------------------
# zeros of J_nu
# ---------------------------------------------------------------------------

def _mcmahon(nu: float, k: int) -> float:
    beta = (k + 0.5 * nu - 0.25) * math.pi
    m = 4.0 * nu * nu
    b8 = 8.0 * beta
    return (beta - (m - 1.0) / b8
            - 4.0 * (m - 1.0) * (7.0 * m - 31.0) / (3.0 * b8 ** 3)
            - 32.0 * (m - 1.0) * (83.0 * m * m - 982.0 * m + 3779.0) / (15.0 * b8 ** 5))


def _j_newton(nu: float, x: float) -> float:
    for _ in range(NEWTON_MAXIT):
        j0 = bessel_j(nu, x)
        dj = nu / x * j0 - bessel_j(nu + 1.0, x)
        step = j0 / dj
        x -= step
        if abs(step) <= 1e-15 * abs(x):
            return x
    raise ZeroSearchError(f"Newton iteration for a zero of J_{nu} near {x} did not converge")


@dataclass
class JZeroTable:
    """Increasing positive zeros of ``J_nu``, extended on demand.

    Extension mutates the table; share instances across threads only with a
    single writer.
    """

    nu: float
    zeros: list = field(default_factory=list)

    def extend(self, k_max: int) -> "JZeroTable":
        nu = self.nu
        while len(self.zeros) < k_max:
            k = len(self.zeros) + 1
            x = _j_newton(nu, _mcmahon(nu, k))
            if self.zeros and not x > self.zeros[-1] + 0.5:
                raise ZeroSearchError(f"J_{nu} zero {k} did not advance past zero {k - 1}")
            self.zeros.append(x)
        return self

    def __getitem__(self, k):
        return self.zeros[k]

    def __len__(self):
        return len(self.zeros)


def find_j_zeros(nu: float, k_max: int) -> JZeroTable:
    """First ``k_max`` positive zeros of ``J_nu`` (``nu > -1``)."""
    if not nu > -1:
        raise ValueError(f"J zeros implemented for nu > -1, got {nu}")
    if k_max < 1:
        raise ValueError("k_max must be positive")
    return JZeroTable(nu=float(nu)).extend(k_max)


_J_CACHE: dict = {}
_J_GUARD = threading.Lock()


def j_zero_table(nu: float, k_max: int) -> list[float]:
    """Cached zeros ``j_{nu,1..k_max}`` (returns a fresh list)."""
    with _J_GUARD:
        table = _J_CACHE.get(nu)
        if table is None:
            table = _J_CACHE[nu] = JZeroTable(nu=float(nu))
        table.extend(k_max)
        return table.zeros[:k_max]
