"""Arbitrary-precision complex scalars with explicit precision tracking.

All numerical work in the library runs on mpmath's binary floats. Values
cross the public API as :class:`APComplex`, which pins the precision the
value was computed at; arithmetic between two tracked values rounds at the
minimum of their precisions and never promotes silently. Raw ``mpf``/``mpc``
are used internally under ``mp.workprec`` scopes, which restore the global
context on exit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .errors import PrecisionError

MIN_PRECISION = 64
DEFAULT_PRECISION = 128
#: extra working bits added around every transcendental evaluation
GUARD_BITS = 20


def check_precision(prec: int) -> int:
    if int(prec) != prec or prec < MIN_PRECISION:
        raise PrecisionError(f"precision must be an integer >= {MIN_PRECISION} bits, got {prec!r}")
    return int(prec)


def to_mpc(value, prec: int | None = None) -> mpc:
    """Coerce a number-like value to a raw ``mpc`` at the ambient precision.

    Accepts APComplex, mpf/mpc, int, float, complex, Fraction, and strings
    (decimal or exact rational "p/q"). Rounding happens at ``prec`` bits if
    given, else at the current mpmath precision.
    """
    if prec is not None:
        with mp.workprec(check_precision(prec)):
            return to_mpc(value)
    if isinstance(value, APComplex):
        return mpc(value.re, value.im)
    if isinstance(value, (mpf, mpc)):
        return mpc(value)
    if isinstance(value, Fraction):
        return mpc(mpf(value.numerator) / mpf(value.denominator))
    if isinstance(value, int):
        return mpc(value)
    if isinstance(value, (float, complex)):
        return mpc(value)
    if isinstance(value, str):
        return mpc(parse_number(value))
    raise TypeError(f"cannot interpret {value!r} as a complex number")


def parse_number(text: str):
    """Parse 'p/q' as an exact Fraction-valued mpf pair, else decimal/complex.

    Returns an mpf/mpc at the current working precision.
    """
    s = text.strip()
    if "/" in s and "j" not in s and "i" not in s:
        num, den = s.split("/", 1)
        return mpf(int(num)) / mpf(int(den))
    s = s.replace("i", "j")
    try:
        return mpmath.mpmathify(s)
    except Exception as exc:
        raise ValueError(f"cannot parse number {text!r}") from exc


@dataclass(frozen=True)
class APComplex:
    """A complex value together with the precision (bits) it carries.

    Arithmetic between two APComplex values rounds at the minimum of the two
    precisions; plain Python numbers and Fractions are treated as exact and
    do not affect the result precision.
    """

    re: mpf
    im: mpf
    prec: int

    @classmethod
    def make(cls, value, prec: int = DEFAULT_PRECISION) -> "APComplex":
        prec = check_precision(prec)
        if isinstance(value, APComplex):
            value = mpc(value.re, value.im)
        with mp.workprec(prec):
            z = to_mpc(value)
            return cls(+z.real, +z.imag, prec)

    @classmethod
    def from_mpc(cls, z, prec: int) -> "APComplex":
        prec = check_precision(prec)
        with mp.workprec(prec):
            z = mpc(z)
            return cls(+z.real, +z.imag, prec)

    def to_mpc(self) -> mpc:
        return mpc(self.re, self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def _binop(self, other, op):
        if isinstance(other, APComplex):
            prec = min(self.prec, other.prec)
            w = other.to_mpc()
        else:
            prec = self.prec
            try:
                w = to_mpc(other, self.prec)
            except TypeError:
                return NotImplemented
        with mp.workprec(prec):
            return APComplex.from_mpc(op(self.to_mpc(), w), prec)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binop(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binop(other, lambda a, b: b / a)

    def __neg__(self):
        return APComplex(-self.re, -self.im, self.prec)

    def conjugate(self) -> "APComplex":
        return APComplex(self.re, -self.im, self.prec)

    def __abs__(self) -> mpf:
        with mp.workprec(self.prec):
            return abs(self.to_mpc())

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        digits = decimal_digits(self.prec)
        if self.im == 0:
            return mpmath.nstr(self.re, digits)
        return f"({mpmath.nstr(self.re, digits)} {'+' if self.im >= 0 else '-'} {mpmath.nstr(abs(self.im), digits)}i)"


def decimal_digits(prec: int) -> int:
    """Decimal digits that round-trip a binary precision of ``prec`` bits."""
    return int(prec * 0.30103) + 3


def mpf_str(x, prec: int) -> str:
    """Decimal string of an mpf with enough digits to round-trip at ``prec``."""
    return mpmath.nstr(mpf(x), decimal_digits(prec), strip_zeros=True)


def as_exact(value):
    """Return value as Fraction if it is exactly rational, else None."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return None
