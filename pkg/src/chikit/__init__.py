"""Quantum-channel representations, conversions, and structure analysis.

A channel can be carried as a dynamical matrix, a Kraus operator set, or a
process (chi) matrix over a Pauli-tensor or Gell-Mann basis; the package
converts losslessly between the three, reports sparsity/rank/distinct-entry
structure, and reproduces distinct-entry histograms for random sparse
trace-preserving ensembles.
"""

from .analysis import (
    SparsityReport,
    distinct_abs_entries,
    distinct_entry_bound,
    single_contributor_probability,
    sparsity_report,
    trace_value_set,
)
from .bases import (
    BasisKind,
    OperatorBasis,
    basis_for,
    gell_mann_basis,
    pauli_tensor_basis,
    trace_coefficient,
)
from .channels import (
    ChiConvention,
    ChiMatrix,
    CoefficientVector,
    DynamicalMatrix,
    KrausSet,
    apply_chi,
    apply_dynamical,
    apply_kraus,
    chi_from_kraus,
    coefficient_vector,
    dynamical_from_kraus,
    is_completely_positive,
    is_trace_preserving,
    kraus_from_chi,
    kraus_from_dynamical,
)
from .errors import (
    ChiKitError,
    ConventionError,
    DimensionError,
    DomainError,
    EnsembleExhaustedError,
    FormatError,
    NotCompletelyPositiveError,
    NotHermitianError,
    SchemaError,
    SizeCapError,
)
from .linalg import (
    DEFAULT_TOL,
    EigenDecomposition,
    hermitian_eig,
    mat,
    matrices_equal,
    max_abs_diff,
    vec,
)
from .montecarlo import (
    ExportFormat,
    HistogramResult,
    SimulationConfig,
    export_histogram,
    histogram_from_json,
    random_sparse_kraus_set,
    run_histogram,
)
from .serialization import (
    ChannelDocument,
    Representation,
    document_from_chi,
    document_from_dynamical,
    document_from_kraus,
    load_channel_document,
    save_channel_document,
)
from .verify import CheckResult, verification_suite

__version__ = "0.1.0"

__all__ = [
    "BasisKind",
    "ChannelDocument",
    "CheckResult",
    "ChiConvention",
    "ChiKitError",
    "ChiMatrix",
    "CoefficientVector",
    "ConventionError",
    "DEFAULT_TOL",
    "DimensionError",
    "DomainError",
    "DynamicalMatrix",
    "EigenDecomposition",
    "EnsembleExhaustedError",
    "ExportFormat",
    "FormatError",
    "HistogramResult",
    "KrausSet",
    "NotCompletelyPositiveError",
    "NotHermitianError",
    "OperatorBasis",
    "Representation",
    "SchemaError",
    "SimulationConfig",
    "SizeCapError",
    "SparsityReport",
    "apply_chi",
    "apply_dynamical",
    "apply_kraus",
    "basis_for",
    "chi_from_kraus",
    "coefficient_vector",
    "distinct_abs_entries",
    "distinct_entry_bound",
    "document_from_chi",
    "document_from_dynamical",
    "document_from_kraus",
    "dynamical_from_kraus",
    "export_histogram",
    "gell_mann_basis",
    "hermitian_eig",
    "histogram_from_json",
    "is_completely_positive",
    "is_trace_preserving",
    "kraus_from_chi",
    "kraus_from_dynamical",
    "load_channel_document",
    "mat",
    "matrices_equal",
    "max_abs_diff",
    "pauli_tensor_basis",
    "random_sparse_kraus_set",
    "run_histogram",
    "save_channel_document",
    "single_contributor_probability",
    "sparsity_report",
    "trace_coefficient",
    "trace_value_set",
    "vec",
    "verification_suite",
]
