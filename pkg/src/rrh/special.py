"""Log-gamma, zeta values, and the Euler-Mascheroni constant.

The gamma evaluation uses the Stirling asymptotic series after an upward
recurrence pushes the argument to |z| >= max(20, prec/6), so accuracy is
uniform over the complex plane at any precision; arguments left of
Re z = 1/2 go through the reflection formula with an unwound log-sine that
keeps the principal branch. Zeta values and the Euler constant come from
Euler-Maclaurin summation.
"""

from __future__ import annotations

import mpmath
from mpmath import mp, mpc, mpf

from .errors import ConvergenceError, GammaPoleError
from .precision import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    APComplex,
    check_precision,
    to_mpc,
)

__all__ = ["log_gamma", "loggamma_mpc", "zeta_values", "euler_gamma"]


_STIRLING_CACHE: dict = {}


def _stirling_coeffs(wp: int, count: int) -> list:
    """B_{2k} / ((2k)(2k-1)) for k = 1..count, cached per working precision."""
    coeffs = _STIRLING_CACHE.setdefault(wp, [])
    while len(coeffs) < count:
        k = len(coeffs) + 1
        coeffs.append(mpmath.bernoulli(2 * k) / ((2 * k) * (2 * k - 1)))
    return coeffs


def _stirling(w) -> mpc:
    """Stirling series for log Gamma, valid for large |w| with Re w > 0."""
    wp = mp.prec
    ln2pi = mpmath.log(2 * mp.pi)
    acc = (w - mpf(1) / 2) * mpmath.log(w) - w + ln2pi / 2
    w2 = w * w
    wpow = 1 / w  # w^{1-2k} for k = 1, 2, ...
    eps = mpf(2) ** (-wp - 2)
    coeffs = _stirling_coeffs(wp, 16)
    k = 1
    while k < 8 * wp:
        if k > len(coeffs):
            coeffs = _stirling_coeffs(wp, 2 * k)
        term = coeffs[k - 1] * wpow
        acc += term
        if abs(term) < eps:
            return acc
        wpow /= w2
        k += 1
    raise ConvergenceError("Stirling series did not converge; argument too small for the cutoff")


def _loggamma_right(z: mpc) -> mpc:
    """Principal log Gamma for Re z >= 0 via recurrence up to the Stirling zone."""
    wp = mp.prec
    radius = max(20, wp // 6 + 1)
    if z.imag == 0:
        # real positive argument: positive recurrence product, one log
        x = z.real
        if x >= radius:
            return mpc(_stirling(x))
        prod = mpf(1)
        while x < radius:
            prod *= x
            x += 1
        return mpc(_stirling(x) - mpmath.log(prod))
    if abs(z) >= radius:
        return _stirling(z)
    im2 = z.imag * z.imag
    shift = int(mpmath.ceil(mpmath.sqrt(max(radius * radius - im2, 0)) - z.real)) if abs(z.imag) < radius else 0
    shift = max(shift, 0)
    while abs(z + shift) < radius:
        shift += 1
    acc = _stirling(z + shift)
    for j in range(shift):
        acc -= mpmath.log(z + j)
    return acc


def loggamma_mpc(z: mpc) -> mpc:
    """Principal branch of log Gamma at the current working precision.

    The caller is responsible for precision scoping and for excluding the
    poles at non-positive integers.
    """
    z = mpc(z)
    if z.imag < 0:
        return mpmath.conj(loggamma_mpc(mpmath.conj(z)))
    if z.real >= mpf(1) / 2:
        return _loggamma_right(z)
    # Reflection on the closed upper half-plane. The log of sin(pi z) is
    # unwound so no branch of the composite is crossed:
    # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}).
    pi = +mp.pi
    j = mpc(0, 1)
    logsin = -mpmath.log(2) + j * pi / 2 - j * pi * z + mpmath.log(1 - mpmath.exp(2 * j * pi * z))
    return mpmath.log(pi) - logsin - _loggamma_right(1 - z)


def _check_pole(z: mpc):
    if z.imag == 0 and z.real <= 0 and mpmath.isint(z.real):
        raise GammaPoleError(int(z.real))


def log_gamma(z, prec: int | None = None) -> APComplex:
    """Principal branch of log Gamma(z) at ``prec`` bits.

    Raises GammaPoleError when z is a non-positive integer.
    """
    if prec is None:
        prec = z.prec if isinstance(z, APComplex) else DEFAULT_PRECISION
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        zz = to_mpc(z)
        _check_pole(zz)
        val = loggamma_mpc(zz)
    return APComplex.from_mpc(val, prec)


def _zeta_em(m: int) -> mpf:
    """Euler-Maclaurin evaluation of zeta(m) for integer m >= 2."""
    wp = mp.prec
    cut = max(16, wp // 6 + 8)
    acc = mpf(0)
    for j in range(1, cut):
        acc += mpf(j) ** (-m)
    acc += mpf(cut) ** (-m) / 2
    acc += mpf(cut) ** (1 - m) / (m - 1)
    eps = mpf(2) ** (-wp - 4)
    poch = mpf(m)  # (m)_{2k-1} for k = 1
    npow = mpf(cut) ** (-m - 1)
    for k in range(1, 8 * cut):
        term = mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) * poch * npow
        acc += term
        if abs(term) < eps:
            return acc
        poch *= (m + 2 * k - 1) * (m + 2 * k)
        npow /= cut * cut
    raise ConvergenceError(f"zeta({m}) Euler-Maclaurin tail did not converge")


def zeta_values(m_max: int, prec: int = DEFAULT_PRECISION) -> list[mpf]:
    """zeta(2), ..., zeta(m_max) to ``prec`` bits."""
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        vals = [_zeta_em(m) for m in range(2, m_max + 1)]
    with mp.workprec(prec):
        return [+v for v in vals]


def _euler_gamma_raw() -> mpf:
    """Euler-Maclaurin evaluation of the Euler constant at ambient precision."""
    wp = mp.prec
    cut = max(20, wp // 5 + 10)
    acc = mpf(0)
    for j in range(1, cut + 1):
        acc += mpf(1) / j
    acc -= mpmath.log(cut)
    acc -= mpf(1) / (2 * cut)
    eps = mpf(2) ** (-wp - 4)
    npow = mpf(cut) ** (-2)
    for k in range(1, 8 * cut):
        term = mpmath.bernoulli(2 * k) / (2 * k) * npow
        acc += term
        if abs(term) < eps:
            return acc
        npow /= cut * cut
    raise ConvergenceError("Euler constant tail did not converge")


def euler_gamma(prec: int = DEFAULT_PRECISION) -> mpf:
    """The Euler-Mascheroni constant to ``prec`` bits."""
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        val = _euler_gamma_raw()
    with mp.workprec(prec):
        return +val
