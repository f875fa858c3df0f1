"""Channel representations and lossless conversions between them.

Three equivalent carriers of a completely positive map are supported:

* :class:`DynamicalMatrix` -- the d**2 x d**2 Hermitian matrix B acting
  entrywise on density matrices, E(rho)[r, s] = sum B[(r,r'),(s,s')] *
  rho[r', s'], with row-major pair flattening of the double indices;
* :class:`KrausSet` -- operators {K_n} with E(rho) = sum K_n rho K_n^dag;
* :class:`ChiMatrix` -- the process matrix of expansion coefficients in a
  fixed operator basis, unique per channel and basis even though Kraus
  sets are only unique up to unitary mixing.

Under row-major vectorization the three are linked by
B = sum_n vec(K_n) vec(K_n)^dag, by canonical extraction K_n =
sqrt(lambda_n) mat(e_n) from the eigenpairs of B, and by the Gram
construction chi[i, j] = sum_n tr(K_n a_i) conj(tr(K_n a_j)).

Two chi scalings are carried explicitly.  ``TRACE_COEFFICIENT`` stores raw
trace coefficients tr(K_n a_i), which keeps small worked examples integer-
valued; ``ORTHONORMAL`` divides by t**2 (t the basis normalization) so the
entries are products of orthonormal expansion coefficients.  The two differ
by the exact global factor t**2, so structural statistics agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bases import BasisKind, OperatorBasis
from .errors import (
    ConventionError,
    DimensionError,
    NotCompletelyPositiveError,
)
from .linalg import (
    DEFAULT_TOL,
    as_complex_matrix,
    hermitian_eig,
    mat,
    max_abs_diff,
    rank_cutoff,
    vec,
)


class ChiConvention(str, Enum):
    TRACE_COEFFICIENT = "trace"
    ORTHONORMAL = "ortho"


@dataclass(eq=False)
class DynamicalMatrix:
    """d**2 x d**2 matrix acting entrywise on rho (row-major index pairs)."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = as_complex_matrix(self.matrix)
        d_sq = self.dim * self.dim
        if self.matrix.shape != (d_sq, d_sq):
            raise DimensionError(
                f"dynamical matrix for dim={self.dim} must be {d_sq}x{d_sq}, "
                f"got {self.matrix.shape}"
            )


@dataclass(eq=False)
class KrausSet:
    """Ordered set of d x d operators; trace preservation is a status, not a precondition."""

    dim: int
    operators: list[np.ndarray]

    def __post_init__(self):
        self.operators = [as_complex_matrix(k) for k in self.operators]
        for k in self.operators:
            if k.shape != (self.dim, self.dim):
                raise DimensionError(
                    f"Kraus operator of shape {k.shape} in a dim={self.dim} set"
                )

    @classmethod
    def from_operators(cls, operators) -> "KrausSet":
        ops = [as_complex_matrix(k) for k in operators]
        if not ops:
            raise DimensionError("cannot infer dimension from an empty operator list")
        return cls(dim=ops[0].shape[0], operators=ops)

    def __len__(self) -> int:
        return len(self.operators)

    @property
    def tp_defect(self) -> float:
        """max | sum K_n^dag K_n - I |, zero for exactly trace-preserving sets."""
        s = np.zeros((self.dim, self.dim), dtype=complex)
        for k in self.operators:
            s += k.conj().T @ k
        return max_abs_diff(s, np.eye(self.dim))


@dataclass(eq=False)
class ChiMatrix:
    """Process matrix over a tagged basis kind and scaling convention."""

    dim_sq: int
    matrix: np.ndarray
    basis_kind: BasisKind
    convention: ChiConvention

    def __post_init__(self):
        self.matrix = as_complex_matrix(self.matrix)
        if self.matrix.shape != (self.dim_sq, self.dim_sq):
            raise DimensionError(
                f"chi matrix must be {self.dim_sq}x{self.dim_sq}, got {self.matrix.shape}"
            )


@dataclass(eq=False)
class CoefficientVector:
    """Trace-coefficient column of one operator plus its transpose-trace row.

    ``entries[j] = tr(k a_j)`` and ``conjugate_row[j] = tr(k^T a_j)``.  For
    operators with real entries the row equals the elementwise conjugate of
    the column; :meth:`conjugacy_defect` measures the deviation.
    """

    entries: np.ndarray
    conjugate_row: np.ndarray

    def conjugacy_defect(self) -> float:
        return max_abs_diff(self.entries.conj(), self.conjugate_row)


def _check_basis_dim(basis: OperatorBasis, dim: int) -> None:
    if basis.dim != dim:
        raise DimensionError(f"basis dim {basis.dim} does not match operator dim {dim}")


def _trace_coefficient_rows(operators, basis: OperatorBasis) -> np.ndarray:
    """Rows L[n, i] = tr(K_n a_i) for a stack of operators."""
    stack = np.stack([as_complex_matrix(k) for k in operators])
    return np.einsum("nab,iba->ni", stack, basis.elements)


def apply_dynamical(b: DynamicalMatrix, rho) -> np.ndarray:
    """Apply the channel in dynamical-matrix form: out[r,s] = B[(r,r'),(s,s')] rho[r',s']."""
    rho = as_complex_matrix(rho)
    d = b.dim
    if rho.shape != (d, d):
        raise DimensionError(f"rho must be {d}x{d}, got {rho.shape}")
    return np.einsum("rasb,ab->rs", b.matrix.reshape(d, d, d, d), rho)


def apply_kraus(ks: KrausSet, rho) -> np.ndarray:
    """Apply the channel in operator-sum form: sum_n K_n rho K_n^dag."""
    rho = as_complex_matrix(rho)
    if rho.shape != (ks.dim, ks.dim):
        raise DimensionError(f"rho must be {ks.dim}x{ks.dim}, got {rho.shape}")
    out = np.zeros_like(rho)
    for k in ks.operators:
        out += k @ rho @ k.conj().T
    return out


def dynamical_from_kraus(ks: KrausSet) -> DynamicalMatrix:
    """Build B = sum_n vec(K_n) vec(K_n)^dag (row-major vec)."""
    d_sq = ks.dim * ks.dim
    b = np.zeros((d_sq, d_sq), dtype=complex)
    for k in ks.operators:
        v = vec(k)
        b += np.outer(v, v.conj())
    return DynamicalMatrix(dim=ks.dim, matrix=b)


def kraus_from_dynamical(b: DynamicalMatrix, tol: float = DEFAULT_TOL) -> KrausSet:
    """Extract the canonical Kraus set from the eigenpairs of B.

    One operator K_n = sqrt(lambda_n) * mat(e_n) is produced per eigenvalue
    above the rank cutoff, so the operator count equals the rank of B.

    Raises:
        NotHermitianError: B is non-Hermitian beyond ``tol``.
        NotCompletelyPositiveError: an eigenvalue lies below ``-tol``.
    """
    eig = hermitian_eig(b.matrix, tol)
    w = eig.eigenvalues
    if w[-1] < -tol:
        raise NotCompletelyPositiveError(
            f"dynamical matrix has eigenvalue {w[-1]:.3e} < -tol; map is not CP"
        )
    cutoff = max(tol, rank_cutoff(b.matrix.shape[0], float(w[0])))
    operators = [
        np.sqrt(w[n]) * mat(eig.eigenvectors[:, n], b.dim)
        for n in range(w.size)
        if w[n] > cutoff
    ]
    return KrausSet(dim=b.dim, operators=operators)


def coefficient_vector(k, basis: OperatorBasis) -> CoefficientVector:
    """Expand one operator against the basis by traces.

    Returns entries[j] = tr(k a_j) and conjugate_row[j] = tr(k^T a_j).
    """
    k = as_complex_matrix(k)
    _check_basis_dim(basis, k.shape[0])
    if k.shape[0] != k.shape[1]:
        raise DimensionError(f"expected a square operator, got {k.shape}")
    entries = np.einsum("ab,iba->i", k, basis.elements)
    conjugate_row = np.einsum("ba,iba->i", k, basis.elements)
    return CoefficientVector(entries=entries, conjugate_row=conjugate_row)


def chi_from_kraus(
    ks: KrausSet,
    basis: OperatorBasis,
    convention: ChiConvention = ChiConvention.TRACE_COEFFICIENT,
) -> ChiMatrix:
    """Build the process matrix as a Gram matrix of trace-coefficient vectors.

    chi[i, j] = sum_n L_n[i] * conj(L_n[j]) with L_n[i] = tr(K_n a_i); the
    orthonormal convention divides by t**2.  Hermiticity and positive
    semidefiniteness hold by construction.
    """
    _check_basis_dim(basis, ks.dim)
    d_sq = ks.dim * ks.dim
    if not ks.operators:
        chi = np.zeros((d_sq, d_sq), dtype=complex)
    else:
        rows = _trace_coefficient_rows(ks.operators, basis)
        chi = rows.T @ rows.conj()
    if convention == ChiConvention.ORTHONORMAL:
        chi = chi / basis.normalization**2
    return ChiMatrix(
        dim_sq=d_sq, matrix=chi, basis_kind=basis.kind, convention=convention
    )


def apply_chi(chi: ChiMatrix, basis: OperatorBasis, rho) -> np.ndarray:
    """Apply the channel in process-matrix form: scale * sum chi[i,j] a_i rho a_j^dag.

    The scale is 1/t**2 for the trace-coefficient convention and 1 for the
    orthonormal convention, so both reproduce the operator-sum action.

    Raises:
        ConventionError: the chi matrix was built over a different basis kind.
    """
    if chi.basis_kind != basis.kind:
        raise ConventionError(
            f"chi is tagged {chi.basis_kind.value!r} but basis is {basis.kind.value!r}"
        )
    if chi.dim_sq != basis.dim * basis.dim:
        raise DimensionError(
            f"chi of size {chi.dim_sq} does not match basis dim {basis.dim}"
        )
    rho = as_complex_matrix(rho)
    if rho.shape != (basis.dim, basis.dim):
        raise DimensionError(f"rho must be {basis.dim}x{basis.dim}, got {rho.shape}")
    mixed = np.einsum("ij,iab->jab", chi.matrix, basis.elements)
    out = np.einsum("jab,bc,jdc->ad", mixed, rho, basis.elements.conj())
    if chi.convention == ChiConvention.TRACE_COEFFICIENT:
        out = out / basis.normalization**2
    return out


def kraus_from_chi(
    chi: ChiMatrix, basis: OperatorBasis, tol: float = DEFAULT_TOL
) -> KrausSet:
    """Extract a Kraus set from the eigenpairs of the process matrix.

    Eigenvector v_n with eigenvalue mu_n yields K_n = sqrt(mu_n) *
    sum_i v_n[i] a_i / t under the trace-coefficient convention (no 1/t for
    orthonormal), so ``chi_from_kraus`` on the result reproduces chi.

    Raises:
        ConventionError: basis kind does not match the chi tag.
        NotCompletelyPositiveError: an eigenvalue lies below ``-tol``.
    """
    if chi.basis_kind != basis.kind:
        raise ConventionError(
            f"chi is tagged {chi.basis_kind.value!r} but basis is {basis.kind.value!r}"
        )
    if chi.dim_sq != basis.dim * basis.dim:
        raise DimensionError(
            f"chi of size {chi.dim_sq} does not match basis dim {basis.dim}"
        )
    eig = hermitian_eig(chi.matrix, tol)
    w = eig.eigenvalues
    if w[-1] < -tol:
        raise NotCompletelyPositiveError(
            f"chi matrix has eigenvalue {w[-1]:.3e} < -tol; map is not CP"
        )
    cutoff = max(tol, rank_cutoff(chi.dim_sq, float(w[0])))
    scale = 1.0
    if chi.convention == ChiConvention.TRACE_COEFFICIENT:
        scale = 1.0 / basis.normalization
    operators = [
        np.einsum("i,iab->ab", np.sqrt(w[n]) * scale * eig.eigenvectors[:, n], basis.elements)
        for n in range(w.size)
        if w[n] > cutoff
    ]
    return KrausSet(dim=basis.dim, operators=operators)


def is_trace_preserving(ks: KrausSet, tol: float = DEFAULT_TOL) -> bool:
    """True when max | sum K_n^dag K_n - I | <= tol."""
    return ks.tp_defect <= tol


def is_completely_positive(b: DynamicalMatrix, tol: float = DEFAULT_TOL) -> bool:
    """True when every eigenvalue of the (Hermitized) dynamical matrix is >= -tol."""
    h = 0.5 * (b.matrix + b.matrix.conj().T)
    w = np.linalg.eigvalsh(h)
    return bool(w[0] >= -tol)
