"""Verification laboratory for Reid-type operator inequalities on C^n."""

from .certifier import (
    GapCertificate,
    ReidInstance,
    Status,
    brute_force_gap,
    certify_dominated,
    certify_reid,
    gap_function_at,
    pointwise_gap,
    reid_gap_at,
)
from .errors import (
    BadDimension,
    DimensionMismatch,
    NotHermitian,
    NotPositive,
    NumericalFailure,
    OrderViolated,
    ReidLabError,
)
from .linalg import (
    DEFAULT_TOL,
    SpectralDecomposition,
    TolerancePolicy,
    adjoint,
    hermitian_eig,
    operator_norm,
    psd_sqrt,
    quadratic_form,
)
from .predicates import (
    DefectReport,
    absolute_value,
    is_cohyponormal,
    is_hyponormal,
    is_positive,
    loewner_leq,
    normality_defect,
)

__version__ = "0.1.0"
