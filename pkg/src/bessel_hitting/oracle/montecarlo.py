"""Monte Carlo hitting times of Bessel processes.

Three samplers, chosen by the index:

* integer dimension ``d = 2 nu + 2``: the norm of a ``d``-dimensional
  Brownian motion with exact Gaussian increments;
* ``nu > -1`` otherwise: exact squared-Bessel transitions, i.e.
  ``R^2_{t+h} / h`` is noncentral chi-square with ``d`` degrees of freedom;
* ``nu <= -1``: Euler steps for the radial SDE, absorbed at the origin.

Steps shrink like ``eps * dist^2`` near the target (and near the origin
for the Euler sampler).  Between grid points a Brownian-bridge test
``exp(-2 d0 d1 / h)`` catches crossings that the discrete path skips.
Paths are split into fixed-size blocks, each with its own Philox stream
spawned from one ``SeedSequence``, so results do not depend on how blocks
are scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..hitting.query import DistributionCurve, HittingQuery, Regime

__all__ = ["McResult", "McSpec", "dkw_band", "ks_distance", "simulate_hitting"]

DKW_ALPHA = 0.01


@dataclass(frozen=True)
class McSpec:
    """Simulation controls.

    Parameters
    ----------
    paths : int
        Number of sample paths (at least 1000).
    t_max : float
        Simulation horizon; paths alive at ``t_max`` are censored.
    eps : float
        Step factor: ``h = eps * dist^2`` near the target, clipped to
        ``[dt_min, dt_max]``.
    dt_max, dt_min : float, optional
        Defaults scale with the problem's length ``L`` (``|a-b|`` or ``b``):
        ``dt_max = L^2/50``, ``dt_min = 1e-6 L^2``.
    seed : int
        Root seed (64-bit).
    bridge : bool
        Apply the Brownian-bridge crossing test.
    block_size : int
        Paths per RNG stream.
    workers : int
        Threads used to run blocks; has no effect on the result.
    """

    paths: int = 100_000
    t_max: float = 100.0
    eps: float = 0.05
    dt_max: float | None = None
    dt_min: float | None = None
    seed: int = 20240601
    bridge: bool = True
    block_size: int = 10_000
    workers: int = 1

    def __post_init__(self):
        if self.paths < 1000:
            raise ValueError("McSpec needs at least 1000 paths")
        if not self.t_max > 0:
            raise ValueError("t_max must be positive")
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.block_size < 1:
            raise ValueError("block_size must be positive")


@dataclass
class McResult:
    """Sorted hitting times (``inf`` when censored) and DKW band."""

    hitting_times: np.ndarray
    n_paths: int
    band: float
    sampler: str
    t_max: float
    absorbed: int = 0

    def ecdf(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.searchsorted(self.hitting_times, t, side="right") / self.n_paths

    def curve(self, times) -> DistributionCurve:
        times = np.asarray(times, dtype=float)
        if np.any(times > self.t_max):
            raise ValueError("curve times beyond the simulation horizon")
        vals = self.ecdf(times)
        return DistributionCurve(times, vals, np.full_like(vals, self.band), "oracle-mc",
                                 extra={"sampler": self.sampler,
                                        "std_err": np.sqrt(vals * (1 - vals) / self.n_paths)})


def dkw_band(n: int, alpha: float = DKW_ALPHA) -> float:
    """Dvoretzky-Kiefer-Wolfowitz half-width ``sqrt(log(2/alpha) / 2n)``."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * n))


def ks_distance(result: McResult, cdf, times) -> float:
    """``sup |F_emp - F|`` over the grid ``times`` (both one-sided limits)."""
    times = np.asarray(times, dtype=float)
    exact = np.array([cdf(float(t)) for t in times])
    right = result.ecdf(times)
    left = np.searchsorted(result.hitting_times, times, side="left") / result.n_paths
    return float(max(np.max(np.abs(right - exact)), np.max(np.abs(left - exact))))


def _sampler_name(q: HittingQuery) -> str:
    d = q.nu.dimension
    if q.regime is Regime.TO_ORIGIN:
        return "euler"
    if abs(d - round(d)) < 1e-12 and round(d) >= 1:
        return "gaussian"
    if q.nu.nu > -1:
        return "besq"
    return "euler"


def _run_block(q: HittingQuery, spec: McSpec, n: int, seed_seq, sampler: str):
    rng = np.random.Generator(np.random.Philox(seed_seq))
    a, b, nu = q.a, q.b, q.nu.nu
    L = abs(a - b) if b > 0 else a
    dt_max = spec.dt_max if spec.dt_max is not None else L * L / 50.0
    dt_min = spec.dt_min if spec.dt_min is not None else 1e-6 * L * L
    dim = int(round(q.nu.dimension)) if sampler == "gaussian" else 0
    # level for the origin sampler: hitting a tiny ball stands in for 0
    target = b if b > 0 else 1e-4 * a
    upward = a < target

    if sampler == "gaussian":
        pos = np.zeros((n, dim))
        pos[:, 0] = a
        r = np.full(n, float(a))
    else:
        r = np.full(n, float(a))
    t = np.zeros(n)
    hit = np.full(n, np.inf)
    alive = np.ones(n, dtype=bool)
    n_absorbed = 0
    drift_c = (2.0 * nu + 1.0) / 2.0

    while True:
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        r0 = r[idx]
        dist = np.abs(r0 - target)
        h = np.clip(spec.eps * dist * dist, dt_min, dt_max)
        if sampler == "euler":
            h = np.minimum(h, np.maximum(spec.eps * r0 * r0, 1e-14))
        h = np.minimum(h, spec.t_max - t[idx])
        if sampler == "gaussian":
            p = pos[idx] + rng.standard_normal((idx.size, dim)) * np.sqrt(h)[:, None]
            r1 = np.sqrt(np.einsum("ij,ij->i", p, p))
            pos[idx] = p
        elif sampler == "besq":
            x1 = h * rng.noncentral_chisquare(q.nu.dimension, r0 * r0 / h)
            r1 = np.sqrt(x1)
        else:
            r1 = r0 + drift_c / r0 * h + np.sqrt(h) * rng.standard_normal(idx.size)
        t1 = t[idx] + h
        if upward:
            crossed = r1 >= target
        else:
            crossed = r1 <= target
        if spec.bridge:
            d0 = np.abs(r0 - target)
            d1 = np.abs(r1 - target)
            pb = np.exp(-2.0 * d0 * d1 / h)
            crossed |= rng.random(idx.size) < pb
        else:
            rng.random(idx.size)
        absorbed = np.zeros(idx.size, dtype=bool)
        if sampler == "euler" and b > 0:
            absorbed = (r1 <= 0) & ~crossed
            # step size collapsed next to the origin: the path exits there
            absorbed |= (h <= 1e-14) & ~crossed
            n_absorbed += int(np.count_nonzero(absorbed))
        hit[idx[crossed]] = t1[crossed]
        done = crossed | absorbed | (t1 >= spec.t_max)
        r[idx] = np.where(r1 > 0, r1, 0.0)
        t[idx] = t1
        alive[idx[done]] = False
    return hit, n_absorbed


def simulate_hitting(q: HittingQuery, spec: McSpec | None = None) -> McResult:
    """Simulate ``spec.paths`` hitting times of ``q``.

    Identical ``spec`` (including ``seed``) gives bitwise-identical output
    regardless of ``workers``.
    """
    spec = spec or McSpec()
    if q.regime is Regime.INWARD and q.a == q.b:
        return McResult(np.zeros(spec.paths), spec.paths, dkw_band(spec.paths), "trivial",
                        spec.t_max)
    sampler = _sampler_name(q)
    n_blocks = -(-spec.paths // spec.block_size)
    sizes = [min(spec.block_size, spec.paths - i * spec.block_size) for i in range(n_blocks)]
    seeds = np.random.SeedSequence(spec.seed).spawn(n_blocks)
    jobs = list(zip(sizes, seeds))
    if spec.workers > 1:
        with ThreadPoolExecutor(spec.workers) as ex:
            out = list(ex.map(lambda job: _run_block(q, spec, job[0], job[1], sampler), jobs))
    else:
        out = [_run_block(q, spec, n, s, sampler) for n, s in jobs]
    times = np.sort(np.concatenate([o[0] for o in out]))
    absorbed = sum(o[1] for o in out)
    return McResult(times, spec.paths, dkw_band(spec.paths), sampler, spec.t_max, absorbed)
