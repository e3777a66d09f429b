"""Domain types shared by the hitting-time solvers."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ..specfun import Index

__all__ = [
    "DistributionCurve",
    "HittingQuery",
    "QuadratureSpec",
    "Regime",
    "RegimeError",
    "TailCoefficients",
    "snap_index",
]

SNAP_TOL = 1e-9


class RegimeError(ValueError):
    """The (a, b, nu) triple does not describe a legal hitting problem."""


class Regime(enum.Enum):
    FROM_ORIGIN = "from-origin"
    INWARD = "inward"
    TO_ORIGIN = "to-origin"
    OUTWARD = "outward"


def snap_index(nu: float, tol: float = SNAP_TOL) -> float:
    """Round ``nu`` onto the nearest half-integer when within ``tol``."""
    h = math.floor(nu) + 0.5
    if abs(nu - h) <= tol:
        return h
    return float(nu)


@dataclass(frozen=True)
class HittingQuery:
    """First hitting time of level ``b`` for a Bessel process started at ``a``.

    Parameters
    ----------
    a, b : float
        Start and target levels, both non-negative.
    nu : float or Index
        Bessel index; values within 1e-9 of a half-integer are snapped.
    times : tuple of float, optional
        Evaluation times attached to the query (used by curve builders).
    """

    a: float
    b: float
    nu: Index
    times: tuple = ()

    def __post_init__(self):
        nu = self.nu.nu if isinstance(self.nu, Index) else float(self.nu)
        object.__setattr__(self, "nu", Index(snap_index(nu)))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        a, b, v = self.a, self.b, self.nu.nu
        if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(v)):
            raise RegimeError("a, b and nu must be finite")
        if a < 0 or b < 0:
            raise RegimeError("levels a and b must be non-negative")
        if a == 0 and b == 0:
            raise RegimeError("a=b=0 is not a hitting problem")
        if a == 0 and v <= -1:
            raise RegimeError(
                f"a=0 requires nu>-1: the origin is not an entrance boundary for nu={v}<=-1")
        if b == 0 and v >= 0:
            raise RegimeError(
                f"b=0 requires nu<0: the origin is never reached for nu={v}>=0")
        if any(t <= 0 for t in self.times):
            raise RegimeError("evaluation times must be positive")

    @property
    def regime(self) -> Regime:
        if self.a == 0:
            return Regime.FROM_ORIGIN
        if self.b == 0:
            return Regime.TO_ORIGIN
        if self.a <= self.b:
            return Regime.INWARD
        return Regime.OUTWARD

    @property
    def alpha(self) -> float:
        """Ratio ``a/b`` (requires ``b > 0``)."""
        if self.b == 0:
            raise RegimeError("alpha=a/b is undefined for b=0")
        return self.a / self.b

    @property
    def total_mass(self) -> float:
        """``P(tau < inf)``; below one for the defective regimes."""
        v = self.nu.nu
        r = self.regime
        if r is Regime.INWARD and v <= -1 and self.a < self.b:
            return (self.b / self.a) ** (2.0 * v)
        if r is Regime.OUTWARD and v > 0:
            return (self.b / self.a) ** (2.0 * v)
        return 1.0

    def with_times(self, times) -> "HittingQuery":
        return HittingQuery(self.a, self.b, self.nu, tuple(times))


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for the kernel integrals.

    ``x_truncation_decay`` is the guaranteed exponential decay rate of the
    damped kernel; the x-range is cut at ``X`` with
    ``exp(-decay X) / decay < abs_tol``.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    x_truncation_decay: float = 2.0
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if not self.x_truncation_decay >= 2.0:
            raise ValueError("x_truncation_decay must be at least 2")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")

    @property
    def x_max(self) -> float:
        d = self.x_truncation_decay
        return max(4.0, -math.log(self.abs_tol * d) / d)


@dataclass(frozen=True)
class TailCoefficients:
    """Large-time expansion coefficients of the outward survival function.

    ``beta1``, ``beta2`` and ``beta3`` map ``m = 0..m_max`` to reals; ``beta3``
    is empty for half-integer orders.  ``sigma1``/``sigma2`` are only set
    for half-integer orders.
    """

    m_max: int
    beta1: dict
    beta2: dict
    beta3: dict
    sigma1: float | None = None
    sigma2: float | None = None

    def identity_residual(self, m: int, c_pow: float) -> float:
        """``beta1(m) + c^nu beta2(m) + c^nu beta3(m)``."""
        return (self.beta1[m] + c_pow * self.beta2.get(m, 0.0)
                + c_pow * self.beta3.get(m, 0.0))


@dataclass
class DistributionCurve:
    """Sampled distribution function with per-point error estimates."""

    times: np.ndarray
    values: np.ndarray
    err_estimates: np.ndarray
    method: str
    total_mass: float = 1.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.err_estimates = np.asarray(self.err_estimates, dtype=float)
        if not (self.times.shape == self.values.shape == self.err_estimates.shape):
            raise ValueError("times, values and err_estimates must have equal length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    def __len__(self):
        return len(self.times)

    def check_axioms(self, slack: float = 10.0) -> bool:
        """Range and monotonicity up to ``slack`` times the error estimates."""
        e = slack * self.err_estimates + 1e-15
        in_range = np.all(self.values >= -e) and np.all(self.values <= 1.0 + e)
        step_slack = e[1:] + e[:-1]
        monotone = np.all(np.diff(self.values) >= -step_slack)
        return bool(in_range and monotone)

    def rows(self):
        for t, v, e in zip(self.times, self.values, self.err_estimates):
            yield float(t), float(v), float(e), self.method
