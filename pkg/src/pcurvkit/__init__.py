"""Exact arithmetic for p-curvatures, q-adic valuations, connection
deformations, and finiteness certification of rank-2 surface-group
representations."""

from .fields import GF, QQ, PrimeField, RationalField, ReductionError, is_prime, primes_in
from .poly import (
    IrreducibilityUndecided,
    Polynomial,
    count_real_roots_closed,
    is_irreducible_q,
    isolate_real_roots,
    poly_gcd,
    poly_xgcd,
    refine_real_root,
    squarefree_part,
)
from .ratfunc import FunctionField, RationalFunction, reduce_rational_mod_p
from .laurent import INF, TruncatedLaurentSeries, ValuationUndecided
from .intervals import BoxC, PrecisionExceeded, RatInterval, certified_root_enclosures
from .linalg import Matrix
from .numberfield import (
    AlgebraicNumber,
    CompositumError,
    NumberField,
    NumberFieldElement,
    compositum,
    embedding_absolute_values,
    is_algebraic_integer,
    is_root_of_unity,
    minimal_polynomial,
)
from .connection import (
    CompanionConnection,
    ConnectionMatrix,
    CyclicVectorNotFound,
    Derivation,
    PCurvatureReport,
    apply_derivation,
    cyclic_vector,
    frobenius_twist_multiplier,
    gauge_transform,
    nabla_power_matrix,
    p_curvature,
    scan_primes,
)
from .valuation import (
    IntegralityReport,
    NewtonPolygon,
    NonvanishingPrediction,
    SeriesDerivation,
    ValuationProfile,
    check_nu_integrality,
    newton_polygon,
    predict_nonvanishing,
    q_valuation,
    standard_tower,
    verify_prediction,
)
from .deformation import (
    BlockExtension,
    DeformationSolution,
    NormalizationResult,
    TruncatedFamily,
    block_p_curvature_check,
    block_power_pair,
    build_self_extension,
    commutant_kernel,
    gauge_family,
    normalize_family,
    solve_deformation,
    step_conjugate,
)
from .surface import (
    ArchReport,
    Finite,
    FiniteOrder,
    FinitenessCertificate,
    Inconclusive,
    InfiniteOrder,
    NonarchReport,
    Obstructed,
    Representation,
    SurfacePresentation,
    TracePolynomial,
    UndecidedOrder,
    Word,
    arch_check,
    certify_finiteness,
    conjugate_representation,
    element_order,
    evaluate,
    fricke_polynomial,
    nonarch_check,
    reduce_word,
    simple_loop_products,
    trace_identity_check,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
