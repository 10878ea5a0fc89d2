"""Frobenius-basis solutions as eps-jets and the Wronskian-ratio experiment.

The normalized solution family is

    Psi(eps, z) = z^eps * sum_{l>=0} z^l * prod_{m=1}^{l} (m+eps)^{-(N+2)},

the gamma-quotient form in which the Gamma(1+eps)^{N+2} prefactor has
cancelled exactly. Its eps-coefficients Psi_k(z) and their z-derivatives feed
the 2-Wronskian ratios whose large negative-z limits are predicted by the
minors of the gamma-class coefficient sequences c_j, d_j.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpc, mpf

from .errors import ConvergenceError, DegeneratePointError
from .jets import EpsJet, _raw_inv, _raw_mul, gamma_power_jet
from .precision import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    APComplex,
    check_precision,
    to_mpc,
)

__all__ = [
    "GammaCoeffs",
    "FrobeniusData",
    "gamma_class_coeffs",
    "psi_jet",
    "wronskian_ratio",
    "gamma_rhs",
    "ClaimRow",
    "ClaimReport",
    "claim_report",
    "integer_ode_residual",
]


@dataclass(frozen=True)
class GammaCoeffs:
    """Taylor coefficients d_j of Gamma(1+eps)^{N+2} and c_j of its product
    with e^{2 pi i eps}."""

    d: EpsJet
    c: EpsJet

    @property
    def order(self) -> int:
        return self.d.order


def _exp_eps_jet(a: mpc, order: int) -> list:
    """Raw coefficients of exp(a*eps) at the ambient precision."""
    out = [mpc(1)]
    for m in range(1, order):
        out.append(out[-1] * a / m)
    return out


def gamma_class_coeffs(N, order: int, prec: int = DEFAULT_PRECISION) -> GammaCoeffs:
    """The coefficient pair (d_j, c_j) through eps^{order-1}."""
    if order < 2:
        raise ValueError("order must be >= 2 (the minors need at least c_1, d_1)")
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        Nv = to_mpc(N)
        d = gamma_power_jet(Nv + 2, order, prec)
        rot = EpsJet._from_raw(_exp_eps_jet(2j * mp.pi, order), prec)
        c = d * rot
    return GammaCoeffs(d=d, c=c)


@dataclass(frozen=True)
class FrobeniusData:
    """Psi(eps, z) and its z-derivative as jets at one sample point."""

    N: APComplex
    z: APComplex
    psi: EpsJet
    psi_prime: EpsJet
    precision_bits: int
    branch: str

    @property
    def order(self) -> int:
        return self.psi.order


def _series_guard_bits(Nv: mpc, zv: mpc) -> int:
    """Extra working bits absorbing the cancellation of the oscillatory sum."""
    nu = max(Nv.real + 2, mpf(1))
    depth = 3 * nu * abs(zv) ** (1 / nu) / mpmath.log(2)
    return int(mpmath.ceil(depth)) + 64


def _log_branch(zv: mpc, branch: str) -> mpc:
    if zv == 0:
        raise ValueError("z must be nonzero (log z enters the jet)")
    if branch not in ("plus", "minus"):
        raise ValueError("branch must be 'plus' or 'minus'")
    if zv.imag == 0 and zv.real < 0:
        sign = 1 if branch == "plus" else -1
        return mpc(mpmath.log(-zv.real), sign * mp.pi)
    return mpmath.log(zv)


def _psi_series_raw(Nv: mpc, zv: mpc, order: int):
    """Sum the two accumulator jets S = sum z^l g_l and SP = sum z^l (l+eps) g_l.

    g_l = prod_{m=1}^{l} (m+eps)^{-(N+2)} is updated incrementally through a
    binomial-series row, so no per-term gamma evaluations happen. Truncation:
    eight consecutive terms below 2^-workprec relative to the largest term.
    """
    wp = mp.prec
    p = -(Nv + 2)
    # binom(p, m) for m < order
    binrow = [mpc(1)]
    for m in range(1, order):
        binrow.append(binrow[-1] * (p - (m - 1)) / m)
    g = [mpc(1)] + [mpc(0)] * (order - 1)
    S = [mpc(0)] * order
    SP = [mpc(0)] * order
    zpow = mpc(1)
    peak = mpf(0)
    cutoff = mpf(2) ** (-wp)
    quiet = 0
    l = 0
    while True:
        term = [zpow * gc for gc in g]
        mag = max(abs(t) for t in term)
        for m in range(order):
            S[m] += term[m]
            SP[m] += l * term[m]
            if m + 1 < order:
                SP[m + 1] += term[m]
        peak = max(peak, mag)
        quiet = quiet + 1 if (peak > 0 and mag < cutoff * peak) else 0
        if quiet >= 8:
            break
        l += 1
        if l > 200000:
            raise ConvergenceError("flat-section series did not converge (is |z| < 1 violated at N = -2?)")
        # g_{l} = g_{l-1} * (l + eps)^{-(N+2)} = g_{l-1} * l^p * sum_m binom(p,m) l^-m eps^m
        lead = mpmath.exp(p * mpmath.log(l))
        linv = mpf(1) / l
        lpow = mpc(1)
        row = []
        for m in range(order):
            row.append(lead * binrow[m] * lpow)
            lpow *= linv
        g = _raw_mul(g, row)
        zpow *= zv
    return S, SP


def psi_jet(
    N,
    z,
    order: int,
    prec: int = DEFAULT_PRECISION,
    branch: str = "plus",
    monodromy_class: int = 0,
) -> FrobeniusData:
    """Psi(eps, z) and d/dz Psi(eps, z) as order-``order`` jets.

    ``branch`` fixes Log z = log|z| +/- i pi for negative real z. With
    ``monodromy_class=1`` the jets carry the extra e^{2 pi i eps} factor, i.e.
    the normalization by the rotated gamma-class series.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        Nv = to_mpc(N)
        zv = to_mpc(z)
    wp = prec + _series_guard_bits(Nv, zv)
    with mp.workprec(wp):
        logz = _log_branch(zv, branch)
        S, SP = _psi_series_raw(Nv, zv, order)
        zjet = _exp_eps_jet(logz, order)
        if monodromy_class == 1:
            zjet = _raw_mul(zjet, _exp_eps_jet(2j * mp.pi, order))
        elif monodromy_class != 0:
            raise ValueError("monodromy_class must be 0 or 1")
        psi_raw = _raw_mul(S, zjet)
        psi_prime_raw = [c / zv for c in _raw_mul(SP, zjet)]
    return FrobeniusData(
        N=APComplex.make(Nv, prec),
        z=APComplex.make(zv, prec),
        psi=EpsJet(psi_raw, prec, order=order),
        psi_prime=EpsJet(psi_prime_raw, prec, order=order),
        precision_bits=prec,
        branch=branch,
    )


def _wronskian(data: FrobeniusData, i: int, j: int) -> mpc:
    psi = data.psi.raw()
    dpsi = data.psi_prime.raw()
    return psi[i] * dpsi[j] - psi[j] * dpsi[i]


def wronskian_ratio(data: FrobeniusData, i: int, j: int) -> APComplex:
    """(Psi_i Psi'_j - Psi_j Psi'_i) / (Psi_1 Psi'_0 - Psi_0 Psi'_1) at data.z."""
    K = data.order
    if not (0 <= i < K and 0 <= j < K):
        raise IndexError(f"indices must lie in [0, {K})")
    if K < 2:
        raise ValueError("the reference Wronskian needs order >= 2")
    prec = data.precision_bits
    with mp.workprec(prec + GUARD_BITS):
        den = _wronskian(data, 1, 0)
        if den == 0:
            raise DegeneratePointError(
                f"reference Wronskian vanishes at z = {data.z}; move the sample point"
            )
        val = _wronskian(data, i, j) / den
    return APComplex.from_mpc(val, prec)


def gamma_rhs(coeffs: GammaCoeffs, i: int, j: int) -> APComplex:
    """(c_i d_j - c_j d_i) / (c_1 d_0 - c_0 d_1); the denominator is 2 pi i."""
    K = coeffs.order
    if not (0 <= i < K and 0 <= j < K):
        raise IndexError(f"indices must lie in [0, {K})")
    prec = min(coeffs.d.prec, coeffs.c.prec)
    c = coeffs.c.raw()
    d = coeffs.d.raw()
    with mp.workprec(prec + GUARD_BITS):
        den = c[1] * d[0] - c[0] * d[1]
        val = (c[i] * d[j] - c[j] * d[i]) / den
    return APComplex.from_mpc(val, prec)


@dataclass(frozen=True)
class ClaimRow:
    """Discrepancy trace of one (i, j) cell along the z list."""

    i: int
    j: int
    predicted: APComplex
    ratios: tuple
    discrepancies: tuple
    non_increasing: bool

    @property
    def final_discrepancy(self):
        return self.discrepancies[-1]


@dataclass(frozen=True)
class ClaimReport:
    N: APComplex
    z_list: tuple
    box: tuple
    order: int
    precision_bits: int
    branch: str
    rows: tuple

    def row(self, i: int, j: int) -> ClaimRow:
        for r in self.rows:
            if (r.i, r.j) == (i, j):
                return r
        raise KeyError((i, j))

    @property
    def all_non_increasing(self) -> bool:
        return all(r.non_increasing for r in self.rows)


def claim_report(
    N,
    z_list,
    box: tuple = (3, 3),
    order: int | None = None,
    prec: int = DEFAULT_PRECISION,
    branch: str = "plus",
) -> ClaimReport:
    """Tabulate |wronskian_ratio - gamma_rhs| over a box of (i, j) and a z list.

    ``box = (rows, cols)`` is a pair of counts: i ranges over 0..rows-1 and j
    over 0..cols-1 (so the default 3x3 box covers indices 0..2). The z values
    must be negative and strictly decreasing, so the trend flag of each row
    states whether the discrepancy is non-increasing as z -> -infinity. The
    report records trends and final values only; no limit value is asserted.
    """
    prec = check_precision(prec)
    rows_n, cols_n = box
    if rows_n < 1 or cols_n < 1:
        raise ValueError("box counts must be positive")
    i_max, j_max = rows_n - 1, cols_n - 1
    if order is None:
        order = max(rows_n, cols_n) + 3
    if order <= max(i_max, j_max, 1):
        raise ValueError("jet order must exceed the box indices")
    with mp.workprec(prec + GUARD_BITS):
        Nv = to_mpc(N)
        if Nv.imag != 0 or not Nv.real > 2:
            warnings.warn("the limit statement is formulated for real N > 2", stacklevel=2)
        zs = [to_mpc(zz) for zz in z_list]
        if not zs:
            raise ValueError("z_list must be non-empty")
        if any(zz.imag != 0 or zz.real >= 0 for zz in zs):
            raise ValueError("every z must be a negative real")
        if any(zs[m + 1].real >= zs[m].real for m in range(len(zs) - 1)):
            raise ValueError("z_list must be strictly decreasing")
    coeffs = gamma_class_coeffs(N, order, prec)
    data = [psi_jet(N, zz, order, prec, branch=branch) for zz in zs]
    rows = []
    for i in range(i_max + 1):
        for j in range(j_max + 1):
            if i == j:
                continue
            predicted = gamma_rhs(coeffs, i, j)
            ratios = tuple(wronskian_ratio(fd, i, j) for fd in data)
            with mp.workprec(prec):
                discrepancies = tuple(abs(r.to_mpc() - predicted.to_mpc()) for r in ratios)
            non_inc = all(
                discrepancies[m + 1] <= discrepancies[m] for m in range(len(discrepancies) - 1)
            )
            rows.append(
                ClaimRow(
                    i=i,
                    j=j,
                    predicted=predicted,
                    ratios=ratios,
                    discrepancies=discrepancies,
                    non_increasing=non_inc,
                )
            )
    return ClaimReport(
        N=APComplex.make(N, prec),
        z_list=tuple(APComplex.make(zz, prec) for zz in z_list),
        box=(rows_n, cols_n),
        order=order,
        precision_bits=prec,
        branch=branch,
        rows=tuple(rows),
    )


def integer_ode_residual(N: int, z, order: int, prec: int = DEFAULT_PRECISION) -> mpf:
    """Max-norm jet residual of D^{N+2} F - z F - eps^{N+2} z^eps / Gamma(1+eps)^{N+2}.

    D = z d/dz acts term-wise on the truncated series of F; the relation
    telescopes exactly, so the residual must sit at truncation-error level
    (the first omitted term).
    """
    if not (isinstance(N, int) and N >= 1):
        raise ValueError("N must be a positive integer")
    p = N + 2
    if p > order - 1:
        raise ValueError("order must be at least N+3 so eps^{N+2} is visible in the jet")
    prec = check_precision(prec)
    with mp.workprec(prec + GUARD_BITS):
        zv = to_mpc(z)
    wp = prec + _series_guard_bits(mpc(N), zv)
    with mp.workprec(wp):
        logz = _log_branch(zv, "plus")
        # D^{N+2} applied per term: multiply term l by the jet (l+eps)^{N+2}
        binrow_int = [mpmath.binomial(p, m) for m in range(order)]
        g = [mpc(1)] + [mpc(0)] * (order - 1)
        Nv = mpc(N)
        pw = -(Nv + 2)
        brow = [mpc(1)]
        for m in range(1, order):
            brow.append(brow[-1] * (pw - (m - 1)) / m)
        applied = [mpc(0)] * order  # sum_l z^l (l+eps)^p g_l
        S = [mpc(0)] * order  # sum_l z^l g_l
        zpow = mpc(1)
        peak = mpf(0)
        cutoff = mpf(2) ** (-wp)
        quiet = 0
        l = 0
        while True:
            term = [zpow * gc for gc in g]
            mag = max(abs(t) for t in term)
            # (l+eps)^p is the exact integer-coefficient polynomial jet
            lp_row = [binrow_int[m] * mpf(l) ** (p - m) if m <= p else mpc(0) for m in range(order)]
            dterm = _raw_mul(lp_row, term)
            for m in range(order):
                S[m] += term[m]
                applied[m] += dterm[m]
            peak = max(peak, mag)
            quiet = quiet + 1 if (peak > 0 and mag < cutoff * peak) else 0
            if quiet >= 8:
                break
            l += 1
            if l > 200000:
                raise ConvergenceError("series did not converge")
            lead = mpmath.exp(pw * mpmath.log(l))
            linv = mpf(1) / l
            lpow = mpc(1)
            row = []
            for m in range(order):
                row.append(lead * brow[m] * lpow)
                lpow *= linv
            g = _raw_mul(g, row)
            zpow *= zv
        boundary = [mpc(0)] * order
        boundary[p] = mpc(1)
        bracket = [applied[m] - zv * S[m] - boundary[m] for m in range(order)]
        inv_d = _raw_inv(list(gamma_power_jet(p, order, wp).raw()))
        zjet = _exp_eps_jet(logz, order)
        residual = _raw_mul(_raw_mul(bracket, zjet), inv_d)
        norm = max(abs(c) for c in residual)
    with mp.workprec(prec):
        return +norm
