"""sepkit: exact and numeric calculus of nodal separator germs.

Exact quadratic-irrational arithmetic, the blow-up/continued-fraction
correspondence, equisingularity decisions, SL(2,Z) torus-map rigidity and
the explicit separator homeomorphism formulas, with a CLI front end.
"""

from .blowup import (
    DivisorId,
    ResolutionRecord,
    ResolutionState,
    blowup_step,
    proximity_matrix,
    resolve,
    run_length_encoding,
)
from .dynamics import (
    ApproxCurveResult,
    BidiscRadialCoords,
    SeparatorMapSpec,
    approx_curve,
    cusp_to_separator_map,
    leaf_gap_statistics,
    radial_decompose,
    separator_boundary_map,
)
from .equising import (
    CuspSpec,
    SeparatorSpec,
    compare_eigenvalues,
    equisingular_cusps,
    equisingular_prefix,
    equisingular_separators,
    normalize_eigenvalue,
)
from .exactnum import (
    BigRational,
    CFExpansion,
    ExactEigenvalue,
    MixedFieldError,
    cf_expand,
    moebius_apply,
    node_transform,
)
from .torusmaps import (
    DecompositionError,
    LiftDecomposition,
    LiftSample,
    UnimodularMatrix,
    admissible_matrices,
    classify_equisingular_matrices,
    decompose_lift,
    extract_deck_matrix,
    interpolate_lifts,
    slope_transport,
    synthesize_lift,
    torus_monomial_map,
    unimodular_box,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxCurveResult",
    "BidiscRadialCoords",
    "BigRational",
    "CFExpansion",
    "CuspSpec",
    "DecompositionError",
    "DivisorId",
    "ExactEigenvalue",
    "LiftDecomposition",
    "LiftSample",
    "MixedFieldError",
    "ResolutionRecord",
    "ResolutionState",
    "SeparatorMapSpec",
    "SeparatorSpec",
    "UnimodularMatrix",
    "admissible_matrices",
    "approx_curve",
    "blowup_step",
    "cf_expand",
    "classify_equisingular_matrices",
    "compare_eigenvalues",
    "cusp_to_separator_map",
    "decompose_lift",
    "equisingular_cusps",
    "equisingular_prefix",
    "equisingular_separators",
    "extract_deck_matrix",
    "interpolate_lifts",
    "leaf_gap_statistics",
    "moebius_apply",
    "node_transform",
    "normalize_eigenvalue",
    "proximity_matrix",
    "radial_decompose",
    "resolve",
    "run_length_encoding",
    "separator_boundary_map",
    "slope_transport",
    "synthesize_lift",
    "torus_monomial_map",
    "unimodular_box",
]
