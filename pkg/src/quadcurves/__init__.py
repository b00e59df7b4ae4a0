"""Quadratic planar systems with invariant algebraic curves of arbitrary degree."""
from .algebra import BiPoly, UniPoly, bipoly_evaluate, bipoly_exact_div, lie_derivative, poly_derivative
from .darboux import (
    AuditReport,
    DarbouxSystemSet,
    InvarianceCertificate,
    audit_family,
    cll_curve_set,
    darboux_combination,
    extract_cofactor,
    verify_invariance,
)
from .operators import (
    HermiteLike,
    Hypergeometric,
    Jacobi,
    Laguerre,
    SturmOperator,
    admissible_kappa,
    classical_generator,
    eval_2f1,
    polynomial_kernel,
)
from .systems import (
    CofactorLine,
    CurveBundle,
    PencilSpec,
    QuadraticSystem,
    build_invariant_curve,
    cll_special_system,
    derive_system,
    fuchs_reduction,
    paper_literal_system,
    pencil_system,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BiPoly",
    "CofactorLine",
    "CurveBundle",
    "DarbouxSystemSet",
    "HermiteLike",
    "Hypergeometric",
    "InvarianceCertificate",
    "Jacobi",
    "Laguerre",
    "PencilSpec",
    "QuadraticSystem",
    "SturmOperator",
    "UniPoly",
    "admissible_kappa",
    "audit_family",
    "bipoly_evaluate",
    "bipoly_exact_div",
    "build_invariant_curve",
    "classical_generator",
    "cll_curve_set",
    "cll_special_system",
    "darboux_combination",
    "derive_system",
    "eval_2f1",
    "extract_cofactor",
    "fuchs_reduction",
    "lie_derivative",
    "paper_literal_system",
    "pencil_system",
    "poly_derivative",
    "polynomial_kernel",
    "verify_invariance",
]
