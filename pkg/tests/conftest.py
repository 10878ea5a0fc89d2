"""Shared numeric assertion helpers."""

import mpmath
from mpmath import mp

from rrh.precision import to_mpc


def as_mpc(value, wp=300):
    with mp.workprec(wp):
        return to_mpc(value)


def assert_close(actual, expected, bits, msg=""):
    """|actual - expected| <= 2^-bits * max(1, |expected|), compared at high precision."""
    with mp.workprec(bits + 80):
        a = to_mpc(actual)
        e = to_mpc(expected)
        err = abs(a - e)
        bound = mpmath.mpf(2) ** (-bits) * max(1, abs(e))
        assert err <= bound, (
            f"{msg} |{mpmath.nstr(a, 12)} - {mpmath.nstr(e, 12)}| = "
            f"{mpmath.nstr(err, 4)} > 2^-{bits} bound {mpmath.nstr(bound, 4)}"
        )


def rel_err(actual, expected, wp=300):
    with mp.workprec(wp):
        a = to_mpc(actual)
        e = to_mpc(expected)
        return abs(a - e) / max(1, abs(e))
