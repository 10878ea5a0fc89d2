import math
import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from conftest import assert_close
from rrh.chi import (
    ChiQuery,
    chi_grassmannian,
    chi_projective,
    chi_projective_gamma,
    hilbert_series,
    poincare_check,
)
from rrh.errors import DegenerateFactorError
from rrh.precision import APComplex


def test_projective_half_dimension_twist_two():
    assert chi_projective(Fraction(-1, 2), 2) == Fraction(3, 8)


def test_projective_twist_zero_is_one():
    assert chi_projective(Fraction(22, 7), 0) == 1
    assert_close(chi_projective(APComplex.make(2 + 3j, 128), 0), 1, 120)


def test_projective_integer_binomial():
    assert chi_projective(3, 2) == 10  # (5 choose 2)


def test_grassmannian_known_rationals():
    assert chi_grassmannian(ChiQuery(2, Fraction(-1, 2), 1)) == Fraction(3, 8)
    assert chi_grassmannian(ChiQuery(2, Fraction(-1, 2), 2)) == Fraction(15, 64)
    assert chi_grassmannian(ChiQuery(2, 2, 1)) == 6
    for k, N in [(1, Fraction(5, 3)), (3, Fraction(-7, 2)), (4, 11)]:
        assert chi_grassmannian(ChiQuery(k, N, 0)) == 1


def test_grassmannian_reduces_to_projective_at_rank_one():
    rng = random.Random(1)
    for _ in range(10):
        N = Fraction(rng.randint(-30, 30), rng.randint(1, 9))
        if N.denominator == 1 and N < 0:
            continue
        n = rng.randint(0, 7)
        assert chi_grassmannian(ChiQuery(1, N, n)) == chi_projective(N, n)


def test_hilbert_series_paper_expansion():
    assert hilbert_series(2, Fraction(-1, 2), 4) == [
        Fraction(1),
        Fraction(6, 16),
        Fraction(60, 256),
        Fraction(700, 4096),
        Fraction(8820, 65536),
    ]


def test_hilbert_series_rank_one_symbolic():
    # [1, N+1, (N+1)(N+2)/2] for a handful of rational N
    for N in [Fraction(1, 3), Fraction(-9, 4), 5]:
        N = Fraction(N)
        assert hilbert_series(1, N, 2) == [1, N + 1, (N + 1) * (N + 2) / 2]


def test_hilbert_series_integer_grassmannian():
    assert hilbert_series(2, 3, 1) == [1, 10]  # sections of O(1) on G(2,5)


def test_degenerate_denominator_raises_with_factor_index():
    with pytest.raises(DegenerateFactorError) as err:
        chi_grassmannian(ChiQuery(3, -2, 1))
    assert err.value.index >= 1
    with pytest.raises(DegenerateFactorError):
        chi_grassmannian(ChiQuery(2, APComplex.make(-1, 128), 4))


def test_integer_consistency_against_comb_products():
    for N in range(1, 11):
        for k in range(1, 5):
            for n in range(0, 7):
                num = 1
                den = 1
                for i in range(k):
                    num *= math.comb(N + n + i, n + i)
                    den *= math.comb(N + i, i)
                expected = Fraction(num, den)
                assert chi_grassmannian(ChiQuery(k, N, n)) == expected
                numeric = chi_grassmannian(ChiQuery(k, APComplex.make(N, 128), n))
                assert_close(numeric, expected, 118, msg=f"N={N} k={k} n={n}")


def _newton_coeffs(k: int, n: int, degree: int):
    """Exact divided differences of N -> chi through integer nodes 1..degree+1."""
    nodes = list(range(1, degree + 2))
    values = [chi_grassmannian(ChiQuery(k, Fraction(N0), n)) for N0 in nodes]
    table = [Fraction(v) for v in values]
    coeffs = [table[0]]
    for level in range(1, len(nodes)):
        for i in range(len(nodes) - level):
            table[i] = (table[i + 1] - table[i]) / (nodes[i + level] - nodes[i])
        coeffs.append(table[0])
    return nodes, coeffs


def test_polynomiality_via_interpolation():
    rng = random.Random(42)
    for k, n in [(1, 4), (2, 3), (3, 2), (4, 1)]:
        degree = k * n
        nodes, coeffs = _newton_coeffs(k, n, degree)
        for _ in range(5):
            N = mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
            with mp.workprec(200):
                acc = mpc(coeffs[-1].numerator) / coeffs[-1].denominator
                for level in range(degree - 1, -1, -1):
                    c = mpc(coeffs[level].numerator) / coeffs[level].denominator
                    acc = acc * (N - nodes[level]) + c
            direct = chi_grassmannian(ChiQuery(k, APComplex.make(N, 160), n))
            assert_close(direct, acc, 140, msg=f"k={k} n={n} N={N}")


def test_gamma_form_consistency():
    rng = random.Random(13)
    for _ in range(20):
        N = mpc(rng.uniform(-4, 4), rng.uniform(0.1, 3))
        n = rng.randint(0, 8)
        poly = chi_projective(APComplex.make(N, 160), n)
        gamma = chi_projective_gamma(APComplex.make(N, 160), n)
        assert_close(poly, gamma, 140, msg=f"N={N} n={n}")


def test_gamma_form_at_paper_point():
    val = chi_projective_gamma(Fraction(-1, 2), 2, 192)
    assert_close(val, Fraction(3, 8), 180)


def test_poincare_geometric_cases():
    r = poincare_check(1, Fraction(1, 4), prec=128)
    assert r.passed
    assert_close(r.rhs, Fraction(16, 9), 120)
    r = poincare_check(0, Fraction(1, 4), prec=128)
    assert r.passed
    assert_close(r.rhs, Fraction(4, 3), 120)


def test_poincare_half_dimension():
    r = poincare_check(Fraction(-1, 2), Fraction(1, 4), prec=192)
    assert r.passed
    with mp.workprec(260):
        direct = mpf(3) ** mpf("-0.5") * 2  # (3/4)^(-1/2)
    assert_close(r.rhs, direct, 180)
    # the partial sum itself agrees with an independent high-precision summation
    with mp.workprec(400):
        acc = mpf(0)
        term_n = lambda n: mpmath.binomial(mpf(-0.5) + n, n) * mpf(1) / 4**n
        for n in range(0, 220):
            acc += term_n(n)
    assert_close(r.lhs, acc, 150)


def test_poincare_rejects_large_y():
    with pytest.raises(ValueError):
        poincare_check(1, Fraction(1, 2), prec=128)


def test_poincare_report_fields():
    r = poincare_check(Fraction(7, 3), Fraction(1, 4), n_max=64, prec=128)
    assert r.method == "poincare-partial-sum"
    assert r.precision_bits == 128
    assert r.tolerance > 0
