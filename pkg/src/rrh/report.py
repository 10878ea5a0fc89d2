"""Structured pass/fail comparison records."""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .precision import APComplex, mpf_str

CSV_FIELDS = [
    "method",
    "passed",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "abs_err",
    "rel_err",
    "tolerance",
    "precision_bits",
]


@dataclass(frozen=True)
class VerificationReport:
    """Comparison of two values against a tolerance.

    ``passed`` is true when the relative error is within tolerance, or, for
    small reference values (|rhs| < 1), when the absolute error is.
    """

    lhs: APComplex
    rhs: APComplex
    abs_err: mpf
    rel_err: mpf
    tolerance: mpf
    precision_bits: int
    passed: bool
    method: str

    @classmethod
    def compare(cls, lhs, rhs, tolerance, precision_bits: int, method: str) -> "VerificationReport":
        if not isinstance(lhs, APComplex):
            lhs = APComplex.make(lhs, precision_bits)
        if not isinstance(rhs, APComplex):
            rhs = APComplex.make(rhs, precision_bits)
        with mp.workprec(precision_bits):
            tol = mpf(tolerance)
            abs_err = abs(lhs.to_mpc() - rhs.to_mpc())
            mag = abs(rhs.to_mpc())
            rel_err = abs_err / mag if mag > 0 else (mpf(0) if abs_err == 0 else mpf("inf"))
            passed = bool(rel_err <= tol or (mag < 1 and abs_err <= tol))
        return cls(lhs, rhs, abs_err, rel_err, tol, precision_bits, passed, method)

    def to_dict(self) -> dict:
        p = self.precision_bits
        return {
            "method": self.method,
            "passed": self.passed,
            "lhs": {"re": mpf_str(self.lhs.re, p), "im": mpf_str(self.lhs.im, p)},
            "rhs": {"re": mpf_str(self.rhs.re, p), "im": mpf_str(self.rhs.im, p)},
            "abs_err": mpf_str(self.abs_err, 64),
            "rel_err": mpf_str(self.rel_err, 64),
            "tolerance": mpf_str(self.tolerance, 64),
            "precision_bits": p,
        }

    def csv_row(self) -> list[str]:
        d = self.to_dict()
        return [
            d["method"],
            str(d["passed"]).lower(),
            d["lhs"]["re"],
            d["lhs"]["im"],
            d["rhs"]["re"],
            d["rhs"]["im"],
            d["abs_err"],
            d["rel_err"],
            d["tolerance"],
            str(d["precision_bits"]),
        ]
