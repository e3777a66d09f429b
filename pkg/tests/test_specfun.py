import cmath
import math

import mpmath
import numpy as np
import pytest

from bessel_hitting.specfun import (
    BesselDomainError,
    Index,
    bessel_i,
    bessel_i_complex,
    bessel_j,
    bessel_k_complex,
    bessel_k_deriv,
    bessel_k_real,
    gamma_fn,
    psi_polynomial,
)

mpmath.mp.dps = 30


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize("x, expected", [(1, 1.0), (0.5, math.sqrt(math.pi)), (5, 24.0)])
def test_gamma_values(x, expected):
    assert rel(gamma_fn(x), expected) <= 1e-13


def test_gamma_pole():
    with pytest.raises(BesselDomainError):
        gamma_fn(-2.0)


def test_index_half_integer():
    assert Index(2.5).is_half_integer
    assert Index(-0.5).is_half_integer
    assert not Index(2.0).is_half_integer
    assert Index(-1.3).dimension == pytest.approx(-0.6)


def test_bessel_i_examples():
    assert bessel_i(0.5, 1.0) == pytest.approx(0.9376748882, abs=1e-10)
    assert bessel_i(0.0, 1e-12) == pytest.approx(1.0, abs=1e-15)
    direct = sum((0.35) ** (2.3 + 2 * n) / (math.factorial(n) * math.gamma(n + 3.3))
                 for n in range(40))
    assert rel(bessel_i(2.3, 0.7), direct) <= 1e-12


@pytest.mark.parametrize("nu", [0.0, 0.3, 1.0, 2.7, 7.5, 12.2])
@pytest.mark.parametrize("x", [1e-3, 0.4, 2.0, 9.0, 35.0, 120.0])
def test_bessel_i_real_vs_mpmath(nu, x):
    ref = mpmath.besseli(nu, x) * mpmath.exp(-x)
    assert rel(bessel_i(nu, x, scaled=True), float(ref)) <= 1e-12


@pytest.mark.parametrize("nu", [0.0, 0.3, 1.0, 2.5, 2.7, 7.5])
@pytest.mark.parametrize("x", [1e-3, 0.4, 2.0, 9.0, 35.0, 120.0])
def test_bessel_k_real_vs_mpmath(nu, x):
    ref = mpmath.besselk(nu, x) * mpmath.exp(x)
    assert rel(bessel_k_real(nu, x, scaled=True), float(ref)) <= 1e-12


def test_bessel_k_real_examples():
    k = math.sqrt(math.pi / 4) * math.exp(-2)
    assert bessel_k_real(-0.5, 2.0) == pytest.approx(k, rel=1e-13)
    x = 1e-8
    assert bessel_k_real(0.0, x) / math.log(2 / x) == pytest.approx(1.0, abs=0.05)
    k0, k1 = bessel_k_real(0, 1.0), bessel_k_real(1, 1.0)
    k2 = k0 + 2 * k1
    k3 = k1 + 4 * k2
    assert rel(bessel_k_real(3, 1.0), k3) <= 1e-12


@pytest.mark.parametrize("nu", [0.0, 0.3, 0.7, 1.5, 2.0, 2.3, 3.7, 5.5])
@pytest.mark.parametrize("z", [0.2 + 0.1j, 1.5 - 0.7j, -0.8 + 1.1j, -2.5 + 0.6j, 3 + 4j,
                               -6 - 2j, 0.01 + 0.02j, 25 - 10j, -15 + 3j])
def test_bessel_k_complex_vs_mpmath(nu, z):
    ref = complex(mpmath.besselk(nu, z))
    got = bessel_k_complex(nu, z)
    assert abs(got - ref) <= 1e-10 * abs(ref)


def test_bessel_k_complex_examples():
    k_half = math.sqrt(math.pi / 2) * math.exp(-1)
    assert bessel_k_complex(0.5, 1.0) == pytest.approx(k_half, rel=1e-14)
    assert bessel_k_complex(0.5, 1.0).real == pytest.approx(0.4610685055, abs=2e-9)
    assert abs(bessel_k_complex(1.5, -1.0 + 0j)) <= 1e-14
    lead = math.sqrt(math.pi / 10) * math.exp(-5)
    v = bessel_k_complex(0.7, 5 + 0j)
    assert abs(v.imag) < 1e-15
    # 1 + (4 nu^2 - 1)/(8 z) + ... ; correction term is O(1/5)
    assert abs(v.real / lead - 1) < 0.2


def test_bessel_k_complex_cut_guard():
    with pytest.raises(BesselDomainError):
        bessel_k_complex(0.3, cmath.rect(1.0, math.pi - 1e-5))


def test_bessel_k_deriv_examples():
    assert bessel_k_deriv(0.5, 1.0) == pytest.approx(-1.5 * math.sqrt(math.pi / 2) / math.e, rel=1e-14)
    assert bessel_k_deriv(0.0, 1.0).real == pytest.approx(-bessel_k_real(1, 1.0), rel=1e-13)
    z = complex(-1.5, math.sqrt(3) / 2)
    assert abs(bessel_k_deriv(2.5, z) + bessel_k_complex(3.5, z)) <= 1e-12 * abs(
        bessel_k_complex(3.5, z))


@pytest.mark.parametrize("nu", [0.0, 0.4, 1.3, 3.0])
@pytest.mark.parametrize("z", [0.5 + 0.5j, 2 - 1j, 8 + 0j, 30 + 5j])
def test_bessel_i_complex_vs_mpmath(nu, z):
    ref = complex(mpmath.besseli(nu, z))
    assert abs(bessel_i_complex(nu, z) - ref) <= 1e-11 * abs(ref)


def test_bessel_j_examples():
    assert abs(bessel_j(0.5, math.pi)) < 1e-15
    assert bessel_j(0.0, 1e-10) == pytest.approx(1.0)
    direct = sum((-1) ** n * 0.5 ** (2 * n + 1) / (math.factorial(n) * math.factorial(n + 1))
                 for n in range(30))
    assert rel(bessel_j(1.0, 1.0), direct) <= 1e-10


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.3, 4.0, 10.5])
@pytest.mark.parametrize("x", [0.3, 3.1, 17.0, 60.0, 400.0])
def test_bessel_j_vs_mpmath(nu, x):
    ref = float(mpmath.besselj(nu, x))
    assert abs(bessel_j(nu, x) - ref) <= 1e-10 * max(abs(ref), 1e-3)


def test_psi_polynomials():
    assert psi_polynomial(0.5).coeffs == (1,)
    assert psi_polynomial(1.5).coeffs == (1, 1)
    assert psi_polynomial(2.5).coeffs == (3, 3, 1)
    assert psi_polynomial(3.5).coeffs == (15, 15, 6, 1)
    with pytest.raises(BesselDomainError):
        psi_polynomial(2.0)


@pytest.mark.parametrize("nu", [1.5, 3.5, 6.5])
def test_psi_matches_k(nu):
    p = psi_polynomial(nu)
    for z in (0.3, 1.0, 2.2 + 1j, 4 - 3j, 7.0):
        lhs = complex(mpmath.besselk(nu, z) * mpmath.power(z, nu) * mpmath.exp(z))
        lhs *= math.sqrt(2 / math.pi)
        assert abs(p(z) - lhs) <= 1e-12 * abs(lhs)


def test_psi_recurrence():
    for n in range(1, 12):
        nu = n + 0.5
        lo, mid, hi = psi_polynomial(nu - 1), psi_polynomial(nu), psi_polynomial(nu + 1)
        for z in (0.7, -1.2, 3.0):
            assert hi(z) == pytest.approx(2 * nu * mid(z) + z * z * lo(z), rel=1e-14)


@pytest.mark.parametrize("nu", [0.3, 1.5, 2.7, 6.0])
def test_wronskian(nu):
    for x in np.linspace(0.1, 50, 60):
        i, k = bessel_i(nu, x, True), bessel_k_real(nu, x, True)
        di = bessel_i(nu + 1, x, True) + nu / x * i
        dk = nu / x * k - bessel_k_real(nu + 1, x, True)
        w = i * dk - di * k
        assert abs(w + 1 / x) <= 1e-10 / x


@pytest.mark.parametrize("nu", [0.0, 0.7, 2.5, 3.3])
def test_ode_residual(nu):
    h = 1e-4
    for x in np.linspace(0.5, 20, 25):
        for f in (lambda s: bessel_k_real(nu, s, True) * math.exp(-(s - x)),
                  lambda s: bessel_i(nu, s, True) * math.exp(s - x)):
            w0, wp, wm = f(x), f(x + h), f(x - h)
            d1 = (wp - wm) / (2 * h)
            d2 = (wp - 2 * w0 + wm) / (h * h)
            res = x * x * d2 + x * d1 - (x * x + nu * nu) * w0
            assert abs(res) <= 1e-6 * (x * x + nu * nu) * abs(w0)


@pytest.mark.parametrize("nu", [0.3, 1.7, 2.5])
def test_k_even_in_order(nu):
    for z in (0.4, 3 + 1j, -1 + 2j):
        assert bessel_k_complex(-nu, z) == pytest.approx(bessel_k_complex(nu, z), rel=1e-14)
    assert bessel_k_real(-nu, 1.3) == bessel_k_real(nu, 1.3)


@pytest.mark.parametrize("nu", [0.5, 1.0, 2.3])
def test_small_argument_limits(nu):
    x = 1e-4
    assert x ** -nu * bessel_i(nu, x) / ((0.5) ** nu / math.gamma(nu + 1)) == pytest.approx(
        1, abs=1e-3)
    assert bessel_k_real(nu, x) / (math.gamma(nu) / 2 * (2 / x) ** nu) == pytest.approx(
        1, abs=1e-3)


@pytest.mark.parametrize("z", [0.7 + 0.2j, -1.1 + 1.4j, 3.0 + 0j])
def test_half_integer_continuity(z):
    v = bessel_k_complex(0.5, z)
    for d in (-1e-9, 1e-9):
        assert abs(bessel_k_complex(0.5 + d, z) - v) <= 1e-7 * abs(v)
