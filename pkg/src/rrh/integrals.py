"""Beta- and Selberg-integral evaluations and the two identity checks.

The interpolated Euler characteristics have two independent routes here: a
one-dimensional beta-type integral (matching the projective-space values) and
a k-dimensional Selberg integral (matching the rank-k product formula). Each
route is available both as a gamma-product closed form and, inside the
convergence region, as direct quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import mpmath
from mpmath import mp, mpc, mpf

from .chi import ChiQuery, chi_grassmannian
from .errors import GammaPoleError, QuadratureDomainError
from .precision import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    APComplex,
    as_exact,
    check_precision,
    to_mpc,
)
from .quadrature import gauss_jacobi_01, tanh_sinh_01
from .report import VerificationReport
from .special import loggamma_mpc

__all__ = [
    "SelbergParams",
    "beta_closed",
    "beta_quadrature",
    "prop1_integral",
    "selberg_closed_form",
    "selberg_quadrature",
    "prop2_check",
]

#: quadrature is tensor-product; past this rank the closed form is the route
MAX_QUADRATURE_RANK = 4


@dataclass(frozen=True)
class SelbergParams:
    """Parameters (alpha, beta, gamma, k) of the k-dimensional Selberg integral."""

    alpha: object
    beta: object
    gamma: object
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


def _lg_checked(z: mpc, factor: str) -> mpc:
    if z.imag == 0 and z.real <= 0 and mpmath.isint(z.real):
        raise GammaPoleError(int(z.real), factor=factor)
    return loggamma_mpc(z)


def beta_closed(alpha, beta, prec: int = DEFAULT_PRECISION) -> APComplex:
    """Gamma(alpha) Gamma(beta) / Gamma(alpha+beta) via log-gamma."""
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        a = to_mpc(alpha)
        b = to_mpc(beta)
        val = mpmath.exp(
            _lg_checked(a, "alpha") + _lg_checked(b, "beta") - _lg_checked(a + b, "alpha+beta")
        )
    return APComplex.from_mpc(val, prec)


def beta_quadrature(alpha, beta, prec: int = DEFAULT_PRECISION) -> APComplex:
    """Direct tanh-sinh evaluation of int_0^1 s^(alpha-1) (1-s)^(beta-1) ds."""
    prec = check_precision(prec)
    with mp.workprec(prec + 2 * GUARD_BITS):
        a = to_mpc(alpha)
        b = to_mpc(beta)
        if not (a.real > 0 and b.real > 0):
            raise QuadratureDomainError("beta integral diverges: need Re alpha > 0 and Re beta > 0")
        am1 = a - 1
        bm1 = b - 1

        def f(s, one_minus_s, log_s, log_1ms):
            return mpmath.exp(am1 * log_s + bm1 * log_1ms)

        margin = min(a.real, b.real)
        val, _err = tanh_sinh_01(f, prec, exponent_margin=margin)
    return APComplex.from_mpc(val, prec)


def prop1_integral(N, n: int, prec: int = DEFAULT_PRECISION) -> APComplex:
    """The beta-type path-integral value for the projective twist O(n).

    Evaluates (sin pi(N+1)/pi) * int_0^1 s^(n+N) (1-s)^(-N-1) ds by
    quadrature; for Re N < 0, non-integer N (and n+N > -1 so the integral
    converges) this reproduces the interpolated chi(O(n)).
    """
    if n < 0:
        raise ValueError("the twist n must be non-negative")
    prec = check_precision(prec)
    with mp.workprec(prec + 2 * GUARD_BITS):
        Nv = to_mpc(N)
        if not Nv.real < 0:
            raise QuadratureDomainError("the integral representation requires Re N < 0")
        if Nv.imag == 0 and mpmath.isint(Nv.real):
            raise QuadratureDomainError("N must not be an integer (sine prefactor vanishes)")
        alpha = Nv + n + 1
        beta = -Nv
        if not alpha.real > 0:
            raise QuadratureDomainError("integral diverges at s=0: need Re(N+n+1) > 0")
        prefactor = mpmath.sinpi(Nv + 1) / mp.pi
        quad = beta_quadrature(alpha, beta, prec + GUARD_BITS)
        val = prefactor * quad.to_mpc()
    return APComplex.from_mpc(val, prec)


def selberg_closed_form(params: SelbergParams, prec: int = DEFAULT_PRECISION) -> APComplex:
    """Selberg's gamma-product closed form, valid by meromorphic continuation.

    Raises GammaPoleError naming the factor when any gamma argument is a
    non-positive integer.
    """
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        a = to_mpc(params.alpha)
        b = to_mpc(params.beta)
        g = to_mpc(params.gamma)
        k = params.k
        acc = mpc(0)
        for i in range(k):
            acc += _lg_checked(a + i * g, f"Gamma(alpha + {i}*gamma)")
            acc += _lg_checked(b + i * g, f"Gamma(beta + {i}*gamma)")
            acc += _lg_checked(1 + (i + 1) * g, f"Gamma(1 + {i + 1}*gamma)")
            acc -= _lg_checked(a + b + (k + i - 1) * g, f"Gamma(alpha + beta + {k + i - 1}*gamma)")
            acc -= _lg_checked(1 + g, "Gamma(1 + gamma)")
        val = mpmath.exp(acc)
    return APComplex.from_mpc(val, prec)


def _vandermonde_power(point, pair_idx, two_gamma: int) -> mpc:
    prod = mpf(1)
    for i, j in pair_idx:
        prod *= point[i] - point[j]
    return prod**two_gamma


def selberg_quadrature(params: SelbergParams, prec: int = DEFAULT_PRECISION) -> APComplex:
    """Tensor-product Gauss-Jacobi evaluation of the Selberg integral.

    Requires real alpha, beta > 0, integer gamma in {1, 2, 3} (so the
    Vandermonde power is a polynomial) and k <= 4. The per-axis rule degree
    exceeds the polynomial degree, so the only error is rounding.
    """
    prec = check_precision(prec)
    k = params.k
    if k > MAX_QUADRATURE_RANK:
        raise QuadratureDomainError(f"tensor quadrature is capped at k = {MAX_QUADRATURE_RANK}")
    gamma_exact = as_exact(params.gamma)
    if gamma_exact is None or gamma_exact.denominator != 1 or gamma_exact not in (1, 2, 3):
        raise QuadratureDomainError("quadrature needs integer gamma in {1, 2, 3}")
    gamma_int = int(gamma_exact)
    wp = prec + 2 * GUARD_BITS
    with mp.workprec(wp):
        a = to_mpc(params.alpha)
        b = to_mpc(params.beta)
        if a.imag != 0 or b.imag != 0:
            raise QuadratureDomainError("quadrature needs real alpha and beta; use the closed form")
        if not (a.real > 0 and b.real > 0):
            raise QuadratureDomainError("outside the convergence region: need alpha > 0 and beta > 0")
        n_axis = (k * (k - 1) * gamma_int) // 2 + 8
        nodes, weights = gauss_jacobi_01(n_axis, a.real, b.real, wp)
        pair_idx = list(combinations(range(k), 2))
        acc = mpf(0)
        # the integrand is symmetric in the axes: sum over sorted index
        # tuples weighted by their orbit size
        for idx in combinations_with_replacement(range(n_axis), k):
            point = [nodes[i] for i in idx]
            wprod = mpf(1)
            for i in idx:
                wprod *= weights[i]
            counts: dict = {}
            for i in idx:
                counts[i] = counts.get(i, 0) + 1
            mult = math.factorial(k)
            for c in counts.values():
                mult //= math.factorial(c)
            if len(counts) < k and gamma_int >= 1:
                # repeated coordinates kill the Vandermonde factor
                continue
            acc += mult * wprod * _vandermonde_power(point, pair_idx, 2 * gamma_int)
        val = acc
    return APComplex.from_mpc(val, prec)


def _exact_integer_littlewood(N: int, k: int, n: int) -> Fraction:
    num = 1
    den = 1
    for i in range(k):
        num *= math.comb(N + n + i, n + i)
        den *= math.comb(N + i, i)
    return Fraction(num, den)


def prop2_check(query: ChiQuery, prec: int = DEFAULT_PRECISION, tolerance=None) -> list[VerificationReport]:
    """Check the rank-k product formula against its Selberg representation.

    Returns one report comparing the interpolated product with
    prefactor * S(n+N+1, -N-k+1; 1, k) (closed form), plus a second report
    against direct quadrature when the parameters sit inside its convergence
    region. At integer N the sine prefactor vanishes against gamma poles, so
    the comparison is with the exact integer-arithmetic product instead.
    """
    prec = check_precision(prec)
    if tolerance is None:
        tolerance = mpf(2) ** (-prec + 40)
    k, n = query.k, query.n
    reports: list[VerificationReport] = []
    with mp.workprec(prec + GUARD_BITS):
        Nv = to_mpc(query.N)
        integer_N = Nv.imag == 0 and mpmath.isint(Nv.real)
        if integer_N:
            lhs = chi_grassmannian(ChiQuery(k, APComplex.from_mpc(Nv, prec), n), prec=prec)
            exact = _exact_integer_littlewood(int(Nv.real), k, n)
            rhs = APComplex.make(Fraction(exact), prec)
            reports.append(
                VerificationReport.compare(lhs, rhs, tolerance, prec, method="littlewood-integer")
            )
            return reports
        lhs = chi_grassmannian(ChiQuery(k, APComplex.from_mpc(Nv, prec), n), prec=prec)
        alpha = Nv + n + 1
        beta = -Nv - k + 1
        prefactor = (
            mpf(-1) ** (k * (k - 1) // 2)
            / mpmath.factorial(k)
            * (mpmath.sinpi(Nv + 1) / mp.pi) ** k
        )
        closed = selberg_closed_form(
            SelbergParams(APComplex.from_mpc(alpha, prec + GUARD_BITS), APComplex.from_mpc(beta, prec + GUARD_BITS), 1, k),
            prec,
        )
        rhs_closed = APComplex.from_mpc(prefactor * closed.to_mpc(), prec)
        reports.append(
            VerificationReport.compare(lhs, rhs_closed, tolerance, prec, method="selberg-closed-form")
        )
        if (
            Nv.imag == 0
            and alpha.real > 0
            and beta.real > 0
            and k <= MAX_QUADRATURE_RANK
        ):
            quad = selberg_quadrature(
                SelbergParams(APComplex.from_mpc(alpha, prec + GUARD_BITS), APComplex.from_mpc(beta, prec + GUARD_BITS), 1, k),
                prec,
            )
            rhs_quad = APComplex.from_mpc(prefactor * quad.to_mpc(), prec)
            reports.append(
                VerificationReport.compare(lhs, rhs_quad, tolerance, prec, method="selberg-quadrature")
            )
    return reports
