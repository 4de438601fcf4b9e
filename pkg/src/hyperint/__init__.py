"""hyperint: exact reduction of hyper-elliptic integrals.

Reduces antiderivatives of (x - p)**n / sqrt(Q(x)) for polynomials Q of
degree M >= 3 with simple real roots onto the fundamental basis of M
integrals, brings even-degree weights to a canonical Legendre-style form
through Moebius changes of variable, and evaluates the resulting elliptic
combinations for quartic weights.
"""

from .canonical import (
    CanonicalForm,
    EllipticCombination,
    EllipticParams,
    EllipticTerm,
    OrbitRecord,
    PullbackForm,
    canonical_form,
    canonical_matrix,
    d4_orbit,
    elliptic_definite,
    elliptic_reduce,
    pullback_form,
)
from .errors import DomainError, VerificationError
from .moebius import (
    INF,
    Homography,
    RootCycle,
    cross_ratio,
    dihedral_elements,
    is_inf,
    r_operator,
    x_canonical,
)
from .ratpoly import LaurentPolynomial, Polynomial, rational, scalar_str
from .reduction import (
    BandColumn,
    BasisIntegral,
    FundamentalBasis,
    ReductionResult,
    recurrence_oracle,
    reduce,
    reduce_root_pole,
    reduction_residual,
)
from .special import (
    KERNEL_BACKEND,
    QuadratureSpec,
    adaptive_gl,
    canonical_i0,
    canonical_p,
    carlson_rc,
    carlson_rf,
    carlson_rj,
    default_tolerance,
    ellip_f,
    ellip_pi,
    lauricella_fd,
    lauricella_fd_series,
    quad_sqrt,
    quad_sqrt_pv,
)
from .verify import (
    VerificationReport,
    run_canonical_suite,
    run_property_suite,
    run_reduction_suite,
    verify_lauricella,
    verify_orbit,
    verify_reduction_exact,
    verify_reduction_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "VerificationError",
    "LaurentPolynomial",
    "Polynomial",
    "rational",
    "scalar_str",
    "BandColumn",
    "BasisIntegral",
    "FundamentalBasis",
    "ReductionResult",
    "reduce",
    "reduce_root_pole",
    "recurrence_oracle",
    "reduction_residual",
    "INF",
    "Homography",
    "RootCycle",
    "cross_ratio",
    "dihedral_elements",
    "is_inf",
    "r_operator",
    "x_canonical",
    "KERNEL_BACKEND",
    "QuadratureSpec",
    "adaptive_gl",
    "canonical_i0",
    "canonical_p",
    "carlson_rc",
    "carlson_rf",
    "carlson_rj",
    "default_tolerance",
    "ellip_f",
    "ellip_pi",
    "lauricella_fd",
    "lauricella_fd_series",
    "quad_sqrt",
    "quad_sqrt_pv",
    "CanonicalForm",
    "EllipticCombination",
    "EllipticParams",
    "EllipticTerm",
    "OrbitRecord",
    "PullbackForm",
    "canonical_form",
    "canonical_matrix",
    "d4_orbit",
    "elliptic_definite",
    "elliptic_reduce",
    "pullback_form",
    "VerificationReport",
    "run_canonical_suite",
    "run_property_suite",
    "run_reduction_suite",
    "verify_lauricella",
    "verify_orbit",
    "verify_reduction_exact",
    "verify_reduction_numeric",
    "__version__",
]
