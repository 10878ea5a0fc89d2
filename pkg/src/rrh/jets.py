"""Truncated power series in the expansion variable eps.

An EpsJet holds coefficients for eps^0 ... eps^{K-1} at a fixed precision;
every ring operation truncates at order K exactly, so there are never hidden
higher-order terms. Binary operations require operands of equal order and
round at the minimum of the two precisions.
"""

from __future__ import annotations

import mpmath
from mpmath import mp, mpc, mpf

from .errors import JetDomainError, JetOrderError
from .precision import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    APComplex,
    check_precision,
    to_mpc,
)
from .special import _euler_gamma_raw, _zeta_em

__all__ = ["EpsJet", "gamma_power_jet", "exp_linear_jet", "affine_power_jet"]


def _raw_mul(a: list, b: list) -> list:
    order = len(a)
    out = [mpc(0)] * order
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(order - i):
            bj = b[j]
            if bj != 0:
                out[i + j] += ai * bj
    return out


def _raw_inv(a: list) -> list:
    if a[0] == 0:
        raise JetDomainError("cannot invert a jet with zero constant term")
    order = len(a)
    inv0 = 1 / a[0]
    out = [inv0] + [mpc(0)] * (order - 1)
    for n in range(1, order):
        s = mpc(0)
        for k in range(1, n + 1):
            s += a[k] * out[n - k]
        out[n] = -inv0 * s
    return out


def _raw_exp(a: list) -> list:
    order = len(a)
    out = [mpmath.exp(a[0])] + [mpc(0)] * (order - 1)
    for n in range(1, order):
        s = mpc(0)
        for k in range(1, n + 1):
            s += k * a[k] * out[n - k]
        out[n] = s / n
    return out


def _raw_log(a: list) -> list:
    if a[0] == 0:
        raise JetDomainError("cannot take the log of a jet with zero constant term")
    order = len(a)
    out = [mpmath.log(a[0])] + [mpc(0)] * (order - 1)
    for n in range(1, order):
        s = n * a[n]
        for k in range(1, n):
            s -= k * out[k] * a[n - k]
        out[n] = s / (n * a[0])
    return out


class EpsJet:
    """Dense truncated power series with arbitrary-precision coefficients."""

    __slots__ = ("_c", "prec")

    def __init__(self, coeffs, prec: int = DEFAULT_PRECISION, order: int | None = None):
        prec = check_precision(prec)
        with mp.workprec(prec):
            c = [to_mpc(x) for x in coeffs]
        if order is not None:
            if len(c) > order:
                raise ValueError(f"{len(c)} coefficients exceed requested order {order}")
            c.extend(mpc(0) for _ in range(order - len(c)))
        if not c:
            raise ValueError("a jet needs at least the constant coefficient")
        self._c = tuple(c)
        self.prec = prec

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, value, order: int, prec: int = DEFAULT_PRECISION) -> "EpsJet":
        return cls([value], prec, order=order)

    @classmethod
    def eps(cls, order: int, prec: int = DEFAULT_PRECISION) -> "EpsJet":
        if order < 2:
            raise ValueError("the eps generator needs order >= 2")
        return cls([0, 1], prec, order=order)

    @classmethod
    def _from_raw(cls, raw, prec: int) -> "EpsJet":
        jet = object.__new__(cls)
        with mp.workprec(prec):
            jet._c = tuple(+mpc(x) for x in raw)
        jet.prec = prec
        return jet

    # -- inspection ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c)

    @property
    def coeffs(self) -> tuple:
        return tuple(APComplex.from_mpc(c, self.prec) for c in self._c)

    def raw(self) -> tuple:
        """The coefficients as plain mpc, lowest order first."""
        return self._c

    def __getitem__(self, k: int) -> APComplex:
        return APComplex.from_mpc(self._c[k], self.prec)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EpsJet)
            and self.prec == other.prec
            and self._c == other._c
        )

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(mpmath.nstr(c, 8) for c in self._c)
        return f"EpsJet([{body}], order={self.order}, prec={self.prec})"

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        """Return (other_raw, prec) for a jet operand, or None for scalars."""
        if isinstance(other, EpsJet):
            if other.order != self.order:
                raise JetOrderError(f"jet orders differ: {self.order} vs {other.order}")
            return other._c, min(self.prec, other.prec)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is not None:
            oc, prec = pair
            with mp.workprec(prec):
                return EpsJet._from_raw([a + b for a, b in zip(self._c, oc)], prec)
        with mp.workprec(self.prec):
            w = to_mpc(other)
            return EpsJet._from_raw((self._c[0] + w,) + self._c[1:], self.prec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, EpsJet) else -to_mpc(other, self.prec))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return EpsJet._from_raw([-a for a in self._c], self.prec)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is not None:
            oc, prec = pair
            with mp.workprec(prec):
                return EpsJet._from_raw(_raw_mul(list(self._c), list(oc)), prec)
        with mp.workprec(self.prec):
            w = to_mpc(other)
            return EpsJet._from_raw([a * w for a in self._c], self.prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, EpsJet):
            return self * other.inv()
        with mp.workprec(self.prec):
            w = to_mpc(other)
            return EpsJet._from_raw([a / w for a in self._c], self.prec)

    def __rtruediv__(self, other):
        return self.inv() * other

    def inv(self) -> "EpsJet":
        with mp.workprec(self.prec + GUARD_BITS):
            raw = _raw_inv(list(self._c))
        return EpsJet._from_raw(raw, self.prec)

    def exp(self) -> "EpsJet":
        with mp.workprec(self.prec + GUARD_BITS):
            raw = _raw_exp(list(self._c))
        return EpsJet._from_raw(raw, self.prec)

    def log(self) -> "EpsJet":
        with mp.workprec(self.prec + GUARD_BITS):
            raw = _raw_log(list(self._c))
        return EpsJet._from_raw(raw, self.prec)

    def __pow__(self, exponent):
        with mp.workprec(self.prec + GUARD_BITS):
            raw = _raw_exp([to_mpc(exponent) * c for c in _raw_log(list(self._c))])
        return EpsJet._from_raw(raw, self.prec)

    def shift(self, k: int) -> "EpsJet":
        """Multiply by eps^k, truncating at the jet order."""
        if k < 0:
            raise ValueError("shift exponent must be non-negative")
        raw = (mpc(0),) * min(k, self.order) + self._c[: max(self.order - k, 0)]
        return EpsJet._from_raw(raw, self.prec)

    def round_to(self, prec: int) -> "EpsJet":
        return EpsJet(self._c, check_precision(prec), order=self.order)

    def max_abs(self) -> mpf:
        """Largest coefficient magnitude (the jet max-norm)."""
        with mp.workprec(self.prec):
            return max(abs(c) for c in self._c)


def gamma_power_jet(p, order: int, prec: int = DEFAULT_PRECISION) -> EpsJet:
    """The jet of Gamma(1+eps)^p through eps^{order-1}.

    Uses log Gamma(1+eps) = -euler_gamma*eps + sum_{m>=2} (-1)^m zeta(m) eps^m / m
    and exponentiates; the constant term is exactly 1.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        pv = to_mpc(p)
        logc = [mpc(0)] * order
        if order > 1:
            logc[1] = -pv * _euler_gamma_raw()
        for m in range(2, order):
            sign = 1 if m % 2 == 0 else -1
            logc[m] = pv * sign * _zeta_em(m) / m
        raw = _raw_exp(logc)
        raw[0] = mpc(1)
    return EpsJet._from_raw(raw, prec)


def exp_linear_jet(a, order: int, prec: int = DEFAULT_PRECISION) -> EpsJet:
    """The jet of exp(a*eps): coefficients a^m / m!."""
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        av = to_mpc(a)
        raw = [mpc(1)]
        for m in range(1, order):
            raw.append(raw[-1] * av / m)
    return EpsJet._from_raw(raw, prec)


def affine_power_jet(base, exponent, order: int, prec: int = DEFAULT_PRECISION) -> EpsJet:
    """The jet of (base + eps)^exponent for nonzero base.

    Expands as base^exponent * sum_m binom(exponent, m) base^{-m} eps^m, which
    avoids a jet log/exp round trip in series summations.
    """
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        b = to_mpc(base)
        if b == 0:
            raise JetDomainError("affine power jet needs a nonzero base")
        pv = to_mpc(exponent)
        lead = mpmath.exp(pv * mpmath.log(b))
        raw = [lead]
        binom = mpc(1)
        bpow = mpc(1)
        for m in range(1, order):
            binom *= (pv - (m - 1)) / m
            bpow /= b
            raw.append(lead * binom * bpow)
    return EpsJet._from_raw(raw, prec)
