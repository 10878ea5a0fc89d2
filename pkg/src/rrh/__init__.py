"""Interpolated Euler characteristics at arbitrary precision.

Four pillars: precision-tracked scalars and eps-jets, the interpolated
projective/grassmannian Euler characteristics, independent beta/Selberg
integral verification, the diagram category with loop parameter t, and the
Frobenius-jet Wronskian-ratio experiment.
"""

from .chi import (
    ChiQuery,
    binom_poly,
    chi_grassmannian,
    chi_projective,
    chi_projective_gamma,
    hilbert_series,
    poincare_check,
)
from .diagrams import (
    DiagMorphism,
    Letter,
    Matching,
    TPoly,
    Word,
    antisymmetrizer,
    categorical_dim,
    category_law_failures,
    closure_trace,
    coevaluation,
    compose,
    enumerate_matchings,
    evaluation,
    identity,
    swap,
    symmetrizer,
    tensor,
    vogel_dimension,
)
from .errors import (
    CompositionError,
    ConvergenceError,
    DegenerateFactorError,
    DegeneratePointError,
    GammaPoleError,
    JetDomainError,
    JetOrderError,
    NonIdempotentError,
    PrecisionError,
    QuadratureDomainError,
    RRHError,
)
from .flatsections import (
    ClaimReport,
    ClaimRow,
    FrobeniusData,
    GammaCoeffs,
    claim_report,
    gamma_class_coeffs,
    gamma_rhs,
    integer_ode_residual,
    psi_jet,
    wronskian_ratio,
)
from .integrals import (
    SelbergParams,
    beta_closed,
    beta_quadrature,
    prop1_integral,
    prop2_check,
    selberg_closed_form,
    selberg_quadrature,
)
from .jets import EpsJet, affine_power_jet, exp_linear_jet, gamma_power_jet
from .precision import DEFAULT_PRECISION, GUARD_BITS, MIN_PRECISION, APComplex
from .report import VerificationReport
from .special import euler_gamma, log_gamma, zeta_values

__version__ = "0.1.0"
