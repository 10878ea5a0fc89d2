"""Interpolated Euler characteristics of line-bundle twists.

The binomial ``binom(N+n, n)`` is always evaluated as the degree-n polynomial
(N+1)(N+2)...(N+n)/n! in N, which stays finite at every complex N including
negative integers. Rational inputs (int/Fraction) take an exact path and
return Fractions; everything else returns precision-tracked complex values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .errors import DegenerateFactorError
from .precision import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    APComplex,
    as_exact,
    check_precision,
    to_mpc,
)
from .report import VerificationReport
from .special import loggamma_mpc

__all__ = [
    "ChiQuery",
    "binom_poly",
    "chi_projective",
    "chi_projective_gamma",
    "chi_grassmannian",
    "hilbert_series",
    "poincare_check",
]


def _binom_exact(N: Fraction, n: int) -> Fraction:
    prod = Fraction(1)
    for j in range(1, n + 1):
        prod *= N + j
    return prod / math.factorial(n)


def _binom_mpc(N: mpc, n: int) -> mpc:
    prod = mpc(1)
    for j in range(1, n + 1):
        prod *= N + j
    return prod / mpmath.factorial(n)


def binom_poly(N, n: int):
    """binom(N+n, n) as the interpolating polynomial in N.

    Exact Fraction for rational N, APComplex otherwise.
    """
    if n < 0:
        raise ValueError("the twist n must be non-negative")
    exact = as_exact(N)
    if exact is not None:
        return _binom_exact(exact, n)
    prec = N.prec if isinstance(N, APComplex) else DEFAULT_PRECISION
    with mp.workprec(prec + GUARD_BITS):
        val = _binom_mpc(to_mpc(N), n)
    return APComplex.from_mpc(val, prec)


def chi_projective(N, n: int):
    """Euler characteristic of the twist O(n) on the interpolated projective space."""
    return binom_poly(N, n)


def chi_projective_gamma(N, n: int, prec: int | None = None) -> APComplex:
    """The same value through Gamma(N+n+1)/(Gamma(n+1) Gamma(N+1)).

    Defined only off the poles of the gamma quotient; used as a consistency
    route against the polynomial evaluation.
    """
    if n < 0:
        raise ValueError("the twist n must be non-negative")
    if prec is None:
        prec = N.prec if isinstance(N, APComplex) else DEFAULT_PRECISION
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        Nv = to_mpc(N)
        val = mpmath.exp(loggamma_mpc(Nv + n + 1) - loggamma_mpc(mpf(n + 1)) - loggamma_mpc(Nv + 1))
    return APComplex.from_mpc(val, prec)


@dataclass(frozen=True)
class ChiQuery:
    """Parameters (k, N, n): rank k >= 1, interpolated parameter N, twist n >= 0."""

    k: int
    N: object
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.n < 0:
            raise ValueError("n must be >= 0")


def chi_grassmannian(query: ChiQuery, prec: int | None = None):
    """Interpolated Littlewood product for the rank-k grassmannian.

    prod_{i=0}^{k-1} binom(N+n+i, n+i) / binom(N+i, i), every binomial taken
    as a polynomial in N. Raises DegenerateFactorError when a denominator
    binomial vanishes (N a small negative integer).
    """
    k, N, n = query.k, query.N, query.n
    exact = as_exact(N)
    if exact is not None:
        acc = Fraction(1)
        for i in range(k):
            dfac = _binom_exact(exact, i)
            if dfac == 0:
                raise DegenerateFactorError(i)
            acc *= _binom_exact(exact, n + i) / dfac
        return acc
    if prec is None:
        prec = N.prec if isinstance(N, APComplex) else DEFAULT_PRECISION
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        Nv = to_mpc(N)
        acc = mpc(1)
        for i in range(k):
            dfac = _binom_mpc(Nv, i)
            if dfac == 0:
                raise DegenerateFactorError(i)
            acc *= _binom_mpc(Nv, n + i) / dfac
    return APComplex.from_mpc(acc, prec)


def hilbert_series(k: int, N, n_max: int, prec: int | None = None) -> list:
    """[chi_grassmannian(k, N, n)] for n = 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return [chi_grassmannian(ChiQuery(k, N, n), prec=prec) for n in range(n_max + 1)]


def _tail_bound(absN: mpf, y_abs: mpf, n_first: int) -> mpf:
    """Upper bound for sum_{n >= n_first} |binom(N+n, n)| |y|^n.

    Uses |binom(N+n, n)| <= binom(n+a, a) with a = ceil(|N|) and a geometric
    majorant from the (decreasing) term ratio |y| (n+1+a)/(n+1).
    """
    a = int(mpmath.ceil(absN))
    t = mpf(math.comb(n_first + a, a)) * y_abs**n_first
    rho = y_abs * (n_first + 1 + a) / (n_first + 1)
    if rho >= 1:
        return mpf("inf")
    return t / (1 - rho)


def poincare_check(N, y, n_max: int | None = None, prec: int | None = None) -> VerificationReport:
    """Compare the partial sums of sum_n chi(O(n)) y^n with (1-y)^{-(N+1)}.

    Requires |y| < 1/2 so the analytic tail bound is geometric; the report's
    tolerance field is that tail bound (plus rounding slack) made relative to
    the closed form, so ``passed`` states that the partial sum agrees within
    what the truncation alone allows.
    """
    if prec is None:
        prec = N.prec if isinstance(N, APComplex) else DEFAULT_PRECISION
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        Nv = to_mpc(N)
        yv = to_mpc(y)
        y_abs = abs(yv)
        if not y_abs < mpf(1) / 2:
            raise ValueError("poincare_check requires |y| < 1/2")
        absN = abs(Nv)
        if n_max is None:
            n_max = 8
            target = mpf(2) ** (-prec - 8)
            while _tail_bound(absN, y_abs, n_max + 1) > target and n_max < 16384:
                n_max *= 2
        acc = mpc(0)
        ypow = mpc(1)
        for n in range(n_max + 1):
            acc += _binom_mpc(Nv, n) * ypow
            ypow *= yv
        rhs = mpmath.exp(-(Nv + 1) * mpmath.log(1 - yv))
        tail = _tail_bound(absN, y_abs, n_max + 1)
        tol_rel = (tail + mpf(2) ** (-prec + 8) * (1 + abs(rhs))) / abs(rhs)
        lhs_ap = APComplex.from_mpc(acc, prec)
        rhs_ap = APComplex.from_mpc(rhs, prec)
    return VerificationReport.compare(lhs_ap, rhs_ap, tol_rel, prec, method="poincare-partial-sum")
