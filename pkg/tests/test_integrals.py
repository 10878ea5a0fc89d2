import math
import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from conftest import assert_close, rel_err
from rrh.chi import ChiQuery, chi_grassmannian, chi_projective
from rrh.errors import GammaPoleError, QuadratureDomainError
from rrh.integrals import (
    SelbergParams,
    beta_closed,
    beta_quadrature,
    prop1_integral,
    prop2_check,
    selberg_closed_form,
    selberg_quadrature,
)
from rrh.precision import APComplex


def exact_beta_int(a: int, b: int) -> Fraction:
    return Fraction(math.factorial(a - 1) * math.factorial(b - 1), math.factorial(a + b - 1))


def exact_selberg_integer(alpha: int, beta: int, gamma: int, k: int) -> Fraction:
    """Independent oracle: expand the Vandermonde power and integrate monomials."""
    import sympy

    s = sympy.symbols(f"s0:{k}")
    delta = sympy.prod([s[i] - s[j] for i in range(k) for j in range(i + 1, k)] or [sympy.Integer(1)])
    poly = sympy.Poly(sympy.expand(delta ** (2 * gamma)), *s)
    total = Fraction(0)
    for monom, coeff in poly.terms():
        term = Fraction(int(coeff))
        for e in monom:
            term *= exact_beta_int(int(e) + alpha, beta)
        total += term
    return total


def test_oracle_reproduces_hand_values():
    assert exact_selberg_integer(1, 1, 1, 2) == Fraction(1, 6)
    assert exact_selberg_integer(2, 1, 1, 2) == Fraction(1, 36)


def test_beta_closed_trivials():
    assert_close(beta_closed(1, 1, 128), 1, 120)
    with mp.workprec(200):
        assert_close(beta_closed("1/2", "1/2", 128), +mp.pi, 120)


def test_beta_closed_vs_quadrature():
    c = beta_closed(3, "5/2", 128)
    q = beta_quadrature(3, "5/2", 128)
    assert rel_err(q, c) < mpf(10) ** -30


def test_beta_closed_pole_errors():
    with pytest.raises(GammaPoleError):
        beta_closed(0, 1, 128)
    with pytest.raises(GammaPoleError):
        beta_closed(1, -2, 128)
    with pytest.raises(GammaPoleError) as err:
        beta_closed("1/2", "-1/2", 128)  # alpha + beta = 0
    assert "alpha+beta" in str(err.value)


def test_beta_quadrature_polynomial_case():
    assert_close(beta_quadrature(2, 2, 128), Fraction(1, 6), 104)


def test_beta_quadrature_half_integer_case():
    q = beta_quadrature("5/2", "3/2", 128)
    c = beta_closed("5/2", "3/2", 128)
    assert rel_err(q, c) < mpf(10) ** -30


def test_beta_quadrature_domain():
    with pytest.raises(QuadratureDomainError):
        beta_quadrature(-1, 2, 128)


def test_prop1_paper_value():
    val = prop1_integral("-1/2", 2, 128)
    assert rel_err(val, Fraction(3, 8)) < mpf(10) ** -30


def test_prop1_twist_zero():
    assert_close(prop1_integral("-1/2", 0, 128), 1, 100)


def test_prop1_negative_three_halves():
    assert_close(prop1_integral("-3/2", 1, 128), Fraction(-1, 2), 100)


def test_prop1_domain_errors():
    with pytest.raises(QuadratureDomainError):
        prop1_integral("1/2", 1, 128)  # Re N >= 0
    with pytest.raises(QuadratureDomainError):
        prop1_integral(-2, 1, 128)  # integer N
    with pytest.raises(QuadratureDomainError):
        prop1_integral("-7/2", 1, 128)  # divergent at s=0


def sample_prop1(rng):
    n = rng.randint(0, 8)
    lo = max(-5.0, -n - 0.93)
    while True:
        re = rng.uniform(lo, -0.07)
        im = rng.uniform(-1, 1)
        if abs(im) < 0.02 and abs(re - round(re)) < 0.05:
            continue
        return mpc(re, im), n


def test_prop1_identity_spot_check():
    rng = random.Random(101)
    bound = mpf(10) ** -25
    for _ in range(40):
        N, n = sample_prop1(rng)
        quad = prop1_integral(APComplex.from_mpc(N, 128), n, 128)
        poly = chi_projective(APComplex.from_mpc(N, 128), n)
        with mp.workprec(220):
            err = abs(quad.to_mpc() - poly.to_mpc()) / max(1, abs(poly.to_mpc()))
        assert err < bound, f"N={N} n={n}: {mpmath.nstr(err, 4)}"


def test_selberg_closed_rank_one_is_beta():
    for gamma in ("3/2", 2, mpc(1, 1)):
        s = selberg_closed_form(SelbergParams("2/3", "7/5", gamma, 1), 160)
        b = beta_closed("2/3", "7/5", 160)
        assert_close(s, b, 150)


def test_selberg_closed_against_polynomial_oracle():
    cases = [(1, 1, 1, 2), (2, 1, 1, 2), (2, 2, 1, 2), (1, 1, 1, 3), (1, 2, 2, 2)]
    for alpha, beta, gamma, k in cases:
        exact = exact_selberg_integer(alpha, beta, gamma, k)
        val = selberg_closed_form(SelbergParams(alpha, beta, gamma, k), 160)
        assert_close(val, exact, 140, msg=f"S{(alpha, beta, gamma, k)}")


def test_selberg_closed_pole_error_names_factor():
    with pytest.raises(GammaPoleError) as err:
        selberg_closed_form(SelbergParams(-1, 1, 1, 2), 128)
    assert "alpha" in str(err.value)


def test_selberg_quadrature_cases():
    q = selberg_quadrature(SelbergParams(1, 1, 1, 2), 128)
    assert_close(q, Fraction(1, 6), 110)
    q = selberg_quadrature(SelbergParams(1, 1, 1, 1), 128)
    assert_close(q, 1, 118)
    q = selberg_quadrature(SelbergParams(2, 2, 1, 2), 128)
    c = selberg_closed_form(SelbergParams(2, 2, 1, 2), 128)
    assert rel_err(q, c) < mpf(10) ** -25


def test_selberg_quadrature_non_integer_exponents():
    q = selberg_quadrature(SelbergParams("3/2", "3/2", 1, 2), 160)
    c = selberg_closed_form(SelbergParams("3/2", "3/2", 1, 2), 160)
    assert_close(q, c, 140)


def test_selberg_quadrature_gamma_two():
    q = selberg_quadrature(SelbergParams(1, 1, 2, 2), 160)
    assert_close(q, exact_selberg_integer(1, 1, 2, 2), 140)


def test_selberg_quadrature_domain_errors():
    with pytest.raises(QuadratureDomainError):
        selberg_quadrature(SelbergParams(1, 1, 1, 5), 128)  # rank cap
    with pytest.raises(QuadratureDomainError):
        selberg_quadrature(SelbergParams(1, 1, "1/2", 2), 128)  # non-integer gamma
    with pytest.raises(QuadratureDomainError):
        selberg_quadrature(SelbergParams(APComplex.make(1 + 1j, 128), 1, 1, 2), 128)
    with pytest.raises(QuadratureDomainError):
        selberg_quadrature(SelbergParams(-1, 1, 1, 2), 128)


def test_selberg_symmetry_alpha_beta():
    rng = random.Random(77)
    for _ in range(10):
        k = rng.randint(1, 4)
        alpha = mpc(rng.uniform(0.2, 3), rng.uniform(-1, 1))
        beta = mpc(rng.uniform(0.2, 3), rng.uniform(-1, 1))
        a = selberg_closed_form(SelbergParams(APComplex.from_mpc(alpha, 160), APComplex.from_mpc(beta, 160), 1, k), 160)
        b = selberg_closed_form(SelbergParams(APComplex.from_mpc(beta, 160), APComplex.from_mpc(alpha, 160), 1, k), 160)
        assert_close(a, b, 140)
    # quadrature route: substituting s -> 1-s swaps the exponents
    qa = selberg_quadrature(SelbergParams("5/2", "3/2", 1, 2), 160)
    qb = selberg_quadrature(SelbergParams("3/2", "5/2", 1, 2), 160)
    assert_close(qa, qb, 140)


def test_prop2_rank_one_reduces_to_prop1_values():
    reports = prop2_check(ChiQuery(1, Fraction(-1, 2), 2), 192)
    assert all(r.passed for r in reports)
    assert_close(reports[0].lhs, Fraction(3, 8), 180)
    assert_close(reports[0].rhs, Fraction(3, 8), 170)


def test_prop2_paper_series_coefficient():
    reports = prop2_check(ChiQuery(2, Fraction(-1, 2), 1), 192)
    assert reports[0].method == "selberg-closed-form"
    assert reports[0].passed
    assert_close(reports[0].rhs, Fraction(3, 8), 170)


def test_prop2_half_integer_high_precision():
    reports = prop2_check(ChiQuery(2, Fraction(-5, 2), 3), 192)
    for r in reports:
        assert r.rel_err < mpf(10) ** -30
    # this parameter point sits inside the quadrature window
    assert {r.method for r in reports} == {"selberg-closed-form", "selberg-quadrature"}


def test_prop2_integer_route():
    reports = prop2_check(ChiQuery(3, 4, 2), 160)
    assert len(reports) == 1
    assert reports[0].method == "littlewood-integer"
    assert reports[0].passed


def sample_prop2(rng):
    k = rng.randint(1, 4)
    n = rng.randint(0, 6)
    while True:
        N = mpc(rng.uniform(-4, 4), rng.uniform(-2, 2))
        if abs(N.imag) > 0.1 or abs(N.real - round(N.real)) > 0.1:
            return k, N, n


def test_prop2_identity_spot_check():
    rng = random.Random(303)
    bound = mpf(10) ** -25
    for _ in range(30):
        k, N, n = sample_prop2(rng)
        reports = prop2_check(ChiQuery(k, APComplex.from_mpc(N, 192), n), 192)
        closed = [r for r in reports if r.method == "selberg-closed-form"][0]
        assert closed.rel_err < bound, f"k={k} N={N} n={n}: {mpmath.nstr(closed.rel_err, 4)}"


def test_verification_report_shape():
    (r,) = prop2_check(ChiQuery(2, Fraction(-1, 2), 1), 128)
    d = r.to_dict()
    assert set(d) == {"method", "passed", "lhs", "rhs", "abs_err", "rel_err", "tolerance", "precision_bits"}
    assert d["passed"] is True
    assert len(r.csv_row()) == 10
