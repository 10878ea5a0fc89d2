"""Quadrature engines on the unit interval at arbitrary precision.

Two rules cover the library's needs: tanh-sinh for one-dimensional integrands
with algebraic endpoint singularities, and Gauss-Jacobi rules (via
Golub-Welsch on the symmetric Jacobi matrix) whose weight absorbs the
endpoint factors so that polynomial integrands are integrated exactly.

Tanh-sinh nodes carry both s and 1-s together with their logarithms, so
integrands of the form exp(a log s + b log(1-s)) never lose the endpoint
digits to cancellation. Node tables are cached per working precision and
reused across integrands.
"""

from __future__ import annotations

import mpmath
from mpmath import mp, mpc, mpf

from .errors import ConvergenceError, QuadratureDomainError
from .precision import GUARD_BITS, check_precision
from .special import loggamma_mpc

__all__ = ["tanh_sinh_01", "gauss_jacobi_01"]

#: smallest endpoint exponent margin the cached node tables support
MIN_EXPONENT_MARGIN = mpf("0.04")

_TS_CACHE: dict = {}


def _ts_nodes(wp: int, level: int) -> list:
    """Positive-t tanh-sinh nodes for one refinement level.

    Level 0 holds t = 0, 1, 2, ...; level m >= 1 holds the odd multiples of
    2^-m. Entries are (big, small, log_big, log_small, weight) with
    big = x(t), small = 1 - x(t); the node at -t reuses the entry with the
    roles of big and small swapped.
    """
    key = (wp, level)
    cached = _TS_CACHE.get(key)
    if cached is not None:
        return cached
    with mp.workprec(wp + 10):
        # beyond u_max even an s^(margin-1) singularity contributes < 2^-wp-20
        u_max = (wp + 20) * mpmath.log(2) / (2 * MIN_EXPONENT_MARGIN)
        t_max = mpmath.asinh(2 * u_max / mp.pi)
        h = mpf(2) ** (-level)
        ts = []
        if level == 0:
            k = 0
            while k * h <= t_max:
                ts.append(k * h)
                k += 1
        else:
            k = 1
            while k * h <= t_max:
                ts.append(k * h)
                k += 2
        nodes = []
        half_pi = mp.pi / 2
        for t in ts:
            u = half_pi * mpmath.sinh(t)
            e2u = mpmath.exp(2 * u)
            big = e2u / (e2u + 1)
            small = 1 / (e2u + 1)
            w = half_pi * mpmath.cosh(t) / mpmath.cosh(u) ** 2 / 2
            nodes.append((big, small, mpmath.log(big), mpmath.log(small), w))
    _TS_CACHE[key] = nodes
    return nodes


def tanh_sinh_01(f, prec: int, *, exponent_margin=1, tol=None, max_level: int = 13):
    """Integrate f over (0, 1) with the tanh-sinh rule.

    ``f(s, one_minus_s, log_s, log_one_minus_s)`` must accept the node pieces
    explicitly so endpoint-singular factors can be assembled from the logs.
    ``exponent_margin`` is min(Re alpha, Re beta) for an integrand behaving
    like s^(alpha-1) (1-s)^(beta-1); it controls how far into the endpoint
    tails the summation must reach. Returns (value, error_estimate).
    """
    prec = check_precision(prec)
    if exponent_margin < MIN_EXPONENT_MARGIN:
        raise QuadratureDomainError(
            f"endpoint exponent margin {exponent_margin} below supported minimum {MIN_EXPONENT_MARGIN}"
        )
    wp = prec + 2 * GUARD_BITS
    if tol is None:
        tol = mpf(2) ** (-prec + 20)
    with mp.workprec(wp):
        tol = mpf(tol)
        cutoff = mpf(2) ** (-wp - 10)

        def level_sum(level: int) -> mpc:
            acc = mpc(0)
            peak = mpf(0)
            quiet = 0
            for i, (big, small, logb, logs, w) in enumerate(_ts_nodes(wp, level)):
                if level == 0 and i == 0:
                    term = w * f(big, small, logb, logs)  # t = 0, s = 1/2
                else:
                    term = w * (f(big, small, logb, logs) + f(small, big, logs, logb))
                acc += term
                mag = abs(term)
                peak = max(peak, mag)
                quiet = quiet + 1 if (peak > 0 and mag < cutoff * peak) else 0
                if quiet >= 3 and i > 4:
                    break
            return acc

        h = mpf(1)
        total = level_sum(0) * h
        prev = None
        err = mpf("inf")
        for level in range(1, max_level + 1):
            h /= 2
            total = total / 2 + h * level_sum(level)
            if prev is not None:
                err = abs(total - prev)
                if err <= tol * max(1, abs(total)):
                    return +total, +err
            prev = total
    raise ConvergenceError(
        f"tanh-sinh did not reach tolerance {mpmath.nstr(tol, 5)} within level {max_level}"
    )


_GJ_CACHE: dict = {}


def gauss_jacobi_01(n: int, alpha, beta, prec: int):
    """Nodes and weights for int_0^1 s^(alpha-1) (1-s)^(beta-1) f(s) ds.

    The rule integrates f exactly for polynomials of degree <= 2n-1. Both
    exponents must be real with alpha, beta > 0.
    """
    prec = check_precision(prec)
    if n < 1:
        raise ValueError("need at least one node")
    wp = prec + GUARD_BITS + 2 * n
    with mp.workprec(wp):
        a = mpf(alpha)
        b = mpf(beta)
        if not (a > 0 and b > 0):
            raise QuadratureDomainError("Gauss-Jacobi weight needs alpha > 0 and beta > 0")
        key = (n, a, b, prec)
        cached = _GJ_CACHE.get(key)
        if cached is not None:
            return cached
        # Jacobi weight (1-x)^A (1+x)^B on [-1,1] with x = 2s - 1
        A = b - 1
        B = a - 1
        J = mp.zeros(n, n)
        J[0, 0] = (B - A) / (A + B + 2)
        for k in range(1, n):
            den = (2 * k + A + B) * (2 * k + A + B + 2)
            J[k, k] = (B * B - A * A) / den
            if k == 1:
                off2 = 4 * (1 + A) * (1 + B) / ((A + B + 2) ** 2 * (A + B + 3))
            else:
                off2 = (
                    4 * k * (k + A) * (k + B) * (k + A + B)
                    / ((2 * k + A + B) ** 2 * (2 * k + A + B + 1) * (2 * k + A + B - 1))
                )
            off = mpmath.sqrt(off2)
            J[k - 1, k] = off
            J[k, k - 1] = off
        evals, evecs = mp.eigsy(J)
        total = mpmath.exp(loggamma_mpc(a).real + loggamma_mpc(b).real - loggamma_mpc(a + b).real)
        pairs = []
        for i in range(n):
            node = (evals[i] + 1) / 2
            weight = total * evecs[0, i] ** 2
            pairs.append((node, weight))
        pairs.sort(key=lambda p: p[0])
        with mp.workprec(prec):
            nodes = tuple(+p[0] for p in pairs)
            weights = tuple(+p[1] for p in pairs)
    rule = (nodes, weights)
    _GJ_CACHE[key] = rule
    return rule
