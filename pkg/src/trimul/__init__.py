"""Exact verification and execution of a corrected trilinear aggregation
scheme for three disjoint matrix products, with its operation-count and
exponent analysis."""

from .core import (
    DimensionMismatchError,
    DisjointInputs,
    DualTensors,
    InputFormatError,
    Mat,
    MultTally,
    Role,
    SplitMix64,
    TripleResult,
    UnsupportedDimensionError,
    mat_from_doc,
    mat_to_doc,
    naive_matmul,
    naive_triple_product,
    random_float_matrix,
    random_matrix,
    trace_triple,
)
from .trilinear import (
    IdentityParams,
    VerificationReport,
    eval_aggregated_rhs,
    eval_grouped_rhs,
    eval_scalar_identity,
    residual_formula,
    verify_identity,
)
from .bilinear import (
    CrossCorrections,
    ProductSet,
    combine_outputs,
    compute_products,
    count_products,
    cross_corrections,
    disjoint_multiply,
    extract_output_via_duals,
)
from .complexity import (
    ComplexityReport,
    find_min_omega,
    m_disjoint,
    m_single,
    omega,
    scan,
)

__version__ = "1.0.0"

__all__ = [
    "ComplexityReport",
    "CrossCorrections",
    "DimensionMismatchError",
    "DisjointInputs",
    "DualTensors",
    "IdentityParams",
    "InputFormatError",
    "Mat",
    "MultTally",
    "ProductSet",
    "Role",
    "SplitMix64",
    "TripleResult",
    "UnsupportedDimensionError",
    "VerificationReport",
    "combine_outputs",
    "compute_products",
    "count_products",
    "cross_corrections",
    "disjoint_multiply",
    "eval_aggregated_rhs",
    "eval_grouped_rhs",
    "eval_scalar_identity",
    "extract_output_via_duals",
    "find_min_omega",
    "m_disjoint",
    "m_single",
    "mat_from_doc",
    "mat_to_doc",
    "naive_matmul",
    "naive_triple_product",
    "omega",
    "random_float_matrix",
    "random_matrix",
    "residual_formula",
    "scan",
    "trace_triple",
    "verify_identity",
]
