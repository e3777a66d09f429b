import math

import mpmath
import pytest

from bessel_hitting.specfun import bessel_j, bessel_k_complex, bessel_k_deriv
from bessel_hitting.zeros import (
    count_k_zeros,
    find_j_zeros,
    find_k_zeros,
    j_zero_table,
    k_zero_set,
    winding_number,
)


@pytest.mark.parametrize("nu, n", [(0.5, 0), (2.5, 2), (3, 2), (1, 0), (1.49, 0), (1.5, 1),
                                   (-2.3, 2), (3.5, 3), (4.2, 4), (5.6, 6)])
def test_count(nu, n):
    assert count_k_zeros(nu) == n


def test_half_integer_zeros():
    assert find_k_zeros(1.5).zeros == pytest.approx((-1.0,))
    zs = sorted(find_k_zeros(2.5).zeros, key=lambda z: z.imag)
    assert zs[0] == pytest.approx(complex(-1.5, -math.sqrt(3) / 2), abs=1e-14)
    assert zs[1] == pytest.approx(complex(-1.5, math.sqrt(3) / 2), abs=1e-14)


def test_small_index_has_no_zeros():
    for nu in (0.0, 0.5, 1.2, -1.4):
        assert find_k_zeros(nu).count == 0


@pytest.mark.parametrize("nu", [1.7, 2.0, 2.3, 2.7, 3.0, 3.5, 4.2, 5.5, 7.3, -2.3])
def test_zero_invariants(nu):
    zs = find_k_zeros(nu)
    assert zs.count == count_k_zeros(nu)
    half = abs(abs(nu) - round(abs(nu) - 0.5) - 0.5) < 1e-12
    for z in zs:
        assert z.real < 0
        k = bessel_k_complex(abs(nu), z)
        assert abs(k) <= 1e-10 * abs(bessel_k_deriv(abs(nu), z) * z)
        if not half:
            assert abs(z.imag) > 1e-6
        # conjugate present
        assert min(abs(w - z.conjugate()) for w in zs) < 1e-10
    for i, z in enumerate(zs.zeros):
        for w in zs.zeros[i + 1:]:
            assert abs(z - w) > 1e-6


def test_nu2_against_mpmath_and_winding():
    zs = find_k_zeros(2.0)
    for z in zs:
        assert abs(complex(mpmath.besselk(2, z))) < 1e-10
    assert winding_number(2.0, -6.0, -1e-6, 0.05, 6.0) == 1


def test_cached_set_matches():
    assert k_zero_set(-2.7).zeros == find_k_zeros(2.7).zeros


@pytest.mark.parametrize("nu, alpha", [(2.5, 2.0), (3.0, 1.5), (4.2, 3.0)])
def test_residue_weights_real_pair_sum(nu, alpha):
    zs = find_k_zeros(nu)
    s = sum(w * mpmath.exp((alpha - 1) * z) for z, w in zip(zs.zeros, zs.residue_weights(alpha)))
    s = complex(s)
    assert abs(s.imag) <= 1e-12 * abs(s)
    with pytest.raises(ValueError):
        zs.residue_weights(1.0)


def test_j_zero_examples():
    t = find_j_zeros(0.5, 3)
    assert list(t.zeros) == pytest.approx([math.pi, 2 * math.pi, 3 * math.pi], rel=1e-14)
    assert find_j_zeros(0.0, 1).zeros[0] == pytest.approx(2.4048255577, abs=1e-10)
    firsts = [find_j_zeros(nu, 1).zeros[0] for nu in (0, 0.5, 1, 2)]
    assert all(a < b for a, b in zip(firsts, firsts[1:]))


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.3, 4.0, 20.0, -0.6])
def test_j_zero_residuals(nu):
    zs = j_zero_table(nu, 200)
    for k, x in enumerate(zs):
        assert abs(bessel_j(nu, x)) <= 1e-12 * max(1.0, abs(bessel_j(nu + 1, x)))
        if k:
            assert x > zs[k - 1]
    assert zs[-1] - zs[-2] == pytest.approx(math.pi, abs=5e-3)
    ref = mpmath.findroot(lambda x: mpmath.besselj(nu, x), zs[0])
    assert zs[0] == pytest.approx(float(ref), rel=1e-13)


def test_j_zero_table_is_copy():
    a = j_zero_table(1.0, 5)
    a.append(0.0)
    assert len(j_zero_table(1.0, 5)) == 5


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.3])
@pytest.mark.parametrize("c", [0.3, 0.7])
@pytest.mark.parametrize("z", [0.5, 1.2])
def test_mittag_leffler_identity(nu, c, z):
    js = j_zero_table(nu, 2000)
    lhs = bessel_j(nu, c * z) / bessel_j(nu, z)
    rhs = c ** nu + sum(2 * z * z / (j * (j * j - z * z)) * bessel_j(nu, c * j)
                        / bessel_j(nu + 1, j) for j in js)
    assert abs(lhs - rhs) <= 1e-6
