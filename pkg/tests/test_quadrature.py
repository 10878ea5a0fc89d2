import mpmath
import pytest
from mpmath import mp, mpf

from conftest import assert_close
from rrh.errors import QuadratureDomainError
from rrh.quadrature import gauss_jacobi_01, tanh_sinh_01
from rrh.special import loggamma_mpc


def beta_ref(a, b, wp=300):
    with mp.workprec(wp):
        return mpmath.exp(loggamma_mpc(mpf(a)) + loggamma_mpc(mpf(b)) - loggamma_mpc(mpf(a) + mpf(b)))


def test_polynomial_integrand():
    val, err = tanh_sinh_01(lambda s, t, ls, lt: s * t, 128)
    assert_close(val, mpf(1) / 6, 110)
    with mp.workprec(160):
        assert err < mpf(2) ** -100


def test_square_root_singularities():
    f = lambda s, t, ls, lt: mpmath.exp(mpf("-0.5") * ls + mpf("-0.5") * lt)
    val, _ = tanh_sinh_01(f, 128, exponent_margin=0.5)
    with mp.workprec(200):
        assert_close(val, +mp.pi, 110)


def test_strong_singularity_margin():
    a, b = mpf("0.06"), mpf("0.9")
    f = lambda s, t, ls, lt: mpmath.exp((a - 1) * ls + (b - 1) * lt)
    val, _ = tanh_sinh_01(f, 128, exponent_margin=a)
    assert_close(val, beta_ref(a, b), 104)


def test_margin_below_support_raises():
    with pytest.raises(QuadratureDomainError):
        tanh_sinh_01(lambda s, t, ls, lt: s, 128, exponent_margin=0.001)


def test_gauss_jacobi_weight_normalization():
    nodes, weights = gauss_jacobi_01(9, mpf("1.5"), mpf("0.5"), 160)
    assert all(0 < x < 1 for x in nodes)
    with mp.workprec(220):
        assert_close(sum(weights), beta_ref("1.5", "0.5"), 150)


def test_gauss_jacobi_monomial_exactness():
    # an n-point rule integrates s^j exactly for j <= 2n-1
    n = 7
    a, b = mpf("0.75"), mpf("2.25")
    nodes, weights = gauss_jacobi_01(n, a, b, 192)
    with mp.workprec(260):
        for j in range(2 * n):
            got = sum(w * x**j for x, w in zip(nodes, weights))
            exact = beta_ref(a + j, b)
            assert_close(got, exact, 180, msg=f"degree {j}")


def test_gauss_jacobi_rejects_bad_weight():
    with pytest.raises(QuadratureDomainError):
        gauss_jacobi_01(5, mpf(0), mpf(1), 128)
    with pytest.raises(QuadratureDomainError):
        gauss_jacobi_01(5, mpf(1), mpf("-0.5"), 128)


def test_gauss_jacobi_cache_stable():
    r1 = gauss_jacobi_01(6, mpf(1), mpf(1), 128)
    r2 = gauss_jacobi_01(6, mpf(1), mpf(1), 128)
    assert r1 is r2


def test_oscillatory_complex_integrand():
    # s^(2.5+i-1) (1-s)^(1.5-0.5i-1) against the gamma closed form
    with mp.workprec(220):
        al = mpmath.mpc("2.5", "1.0")
        be = mpmath.mpc("1.5", "-0.5")
        ref = mpmath.exp(loggamma_mpc(al) + loggamma_mpc(be) - loggamma_mpc(al + be))
    f = lambda s, t, ls, lt: mpmath.exp((al - 1) * ls + (be - 1) * lt)
    val, _ = tanh_sinh_01(f, 160, exponent_margin=1.5)
    assert_close(val, ref, 140)
