"""Exception types shared across the library."""


class RRHError(Exception):
    """Base class for all library-specific errors."""


class PrecisionError(RRHError, ValueError):
    """Requested precision below the supported minimum."""


class GammaPoleError(RRHError, ValueError):
    """A gamma factor was evaluated at a non-positive integer.

    ``pole`` is the offending integer, ``factor`` an optional label saying
    which factor of a product formula hit it.
    """

    def __init__(self, pole, factor=None):
        self.pole = pole
        self.factor = factor
        where = f" in factor {factor}" if factor is not None else ""
        super().__init__(f"gamma pole at non-positive integer {pole}{where}")


class JetDomainError(RRHError, ValueError):
    """Jet inversion/logarithm attempted on a jet with zero constant term."""


class JetOrderError(RRHError, ValueError):
    """Binary jet operation on jets of mismatched truncation order."""


class QuadratureDomainError(RRHError, ValueError):
    """Integral parameters outside the convergence region of the rule."""


class DegenerateFactorError(RRHError, ZeroDivisionError):
    """A denominator binomial of the interpolated product vanishes.

    ``index`` is the 0-based factor index i with binom(N+i, i) = 0.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(
            message or f"degenerate parameters: denominator factor binom(N+{index}, {index}) is zero"
        )


class CompositionError(RRHError, ValueError):
    """Diagram composition attempted on morphisms with mismatched words."""


class NonIdempotentError(RRHError, ValueError):
    """Categorical dimension requested for a non-idempotent endomorphism."""


class DegeneratePointError(RRHError, ArithmeticError):
    """The reference Wronskian vanishes at the requested sample point."""


class ConvergenceError(RRHError, ArithmeticError):
    """A series or quadrature failed to reach the requested accuracy."""
