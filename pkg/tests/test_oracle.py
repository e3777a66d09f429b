import math

import numpy as np
import pytest
from scipy import special

from bessel_hitting.hitting import HittingQuery, cdf
from bessel_hitting.oracle import (
    InversionSpec,
    McSpec,
    dkw_band,
    gaver_stehfest,
    invert_transform,
    inversion_curve,
    ks_distance,
    simulate_hitting,
    talbot,
)


@pytest.mark.parametrize("t", [0.01, 1.0, 7.0, 300.0])
def test_talbot_trivial_pairs(t):
    assert talbot(lambda s: 1 / s, t) == pytest.approx(1.0, abs=1e-10)
    assert talbot(lambda s: 1 / (s * (s + 1)), t) == pytest.approx(1 - math.exp(-t), abs=1e-9)


def test_talbot_sqrt_pair():
    # e^{-sqrt s}/s <-> erfc(1/(2 sqrt t))
    f = talbot(lambda s: np.exp(-np.sqrt(s)) / s, 1.0)
    assert f == pytest.approx(special.erfc(0.5), abs=1e-12)
    assert gaver_stehfest(lambda s: math.exp(-math.sqrt(s)) / s, 1.0) == pytest.approx(
        special.erfc(0.5), abs=1e-5)


def test_gaver_stehfest_pairs():
    for t in (0.3, 2.0):
        assert gaver_stehfest(lambda s: 1 / s, t) == pytest.approx(1.0, abs=1e-7)
        assert gaver_stehfest(lambda s: 1 / (s * (s + 1)), t) == pytest.approx(
            1 - math.exp(-t), abs=1e-5)


def test_spec_validation():
    with pytest.raises(ValueError):
        InversionSpec("talbot", node_count=8)
    with pytest.raises(ValueError):
        InversionSpec("gaver-stehfest", node_count=15)
    with pytest.raises(ValueError):
        talbot(lambda s: 1 / s, 0.0)


@pytest.mark.parametrize("a, b, nu, tol", [(2, 1, 0.8, 1e-6), (2, 1, -0.5, 1e-6),
                                           (1, 2, 0.5, 5e-5), (0, 1, 0.0, 5e-5),
                                           (2, 0, -1.3, 5e-5)])
def test_talbot_gaver_stehfest_agree(a, b, nu, tol):
    # double-precision Stehfest loses digits on laws that are flat near t = 0
    q = HittingQuery(a, b, nu)
    for t in (2.0, 8.0, 30.0):
        v, err = invert_transform(q, t=t, return_error=True)
        assert err <= tol
        gs = invert_transform(q, InversionSpec("gaver-stehfest"), t=t)
        assert abs(gs - v) == pytest.approx(err)


def test_inversion_curve_flags():
    curve = inversion_curve(HittingQuery(2, 1, -0.5), np.logspace(-1, 1, 5))
    assert curve.method.startswith("oracle-inversion")
    assert np.all(np.asarray(curve.err_estimates) < 1e-4)


def test_dkw_band():
    assert dkw_band(100_000) == pytest.approx(math.sqrt(math.log(200) / 200_000))


def test_mc_spec_validation():
    with pytest.raises(ValueError):
        McSpec(paths=10)
    with pytest.raises(ValueError):
        McSpec(eps=1.5)


def test_mc_determinism_and_workers():
    q = HittingQuery(2, 1, -0.5)
    spec = McSpec(paths=4000, t_max=50.0, seed=7, block_size=1000)
    r1 = simulate_hitting(q, spec)
    r2 = simulate_hitting(q, spec)
    r3 = simulate_hitting(q, McSpec(paths=4000, t_max=50.0, seed=7, block_size=1000, workers=3))
    assert np.array_equal(r1.hitting_times, r2.hitting_times)
    assert np.array_equal(r1.hitting_times, r3.hitting_times)
    r4 = simulate_hitting(q, McSpec(paths=4000, t_max=50.0, seed=8, block_size=1000))
    assert not np.array_equal(r1.hitting_times, r4.hitting_times)


@pytest.mark.parametrize("a, b, nu, sampler", [(2, 1, -0.5, "gaussian"), (0, 1, 0.0, "gaussian"),
                                               (3, 1, 0.8, "besq"), (1, 2, -2.0, "euler"),
                                               (2, 0, -1.3, "euler")])
def test_mc_small_runs_within_band(a, b, nu, sampler):
    q = HittingQuery(a, b, nu)
    L = abs(a - b)
    res = simulate_hitting(q, McSpec(paths=20_000, t_max=20 * L * L, seed=11))
    assert res.sampler == sampler
    grid = np.minimum(np.logspace(-2, math.log10(20), 60) * L * L, res.t_max)
    ks = ks_distance(res, lambda t: cdf(q, t), grid)
    assert ks <= res.band + 0.005
    curve = res.curve(grid)
    assert curve.method == "oracle-mc"


def test_from_origin_short_time_mc():
    # planar Brownian motion from 0, level 1, t = 0.01: 3 standard errors
    q = HittingQuery(0, 1, 0.0)
    res = simulate_hitting(q, McSpec(paths=40_000, t_max=0.02, seed=3))
    p = float(res.ecdf(0.01))
    se = math.sqrt(max(p * (1 - p), 1e-12) / res.n_paths)
    assert abs(p - cdf(q, 0.01)) <= 3 * se + 1e-4


def test_mc_curve_horizon():
    res = simulate_hitting(HittingQuery(2, 1, -0.5), McSpec(paths=1000, t_max=1.0, seed=1))
    with pytest.raises(ValueError):
        res.curve([2.0])
