"""Dense complex-matrix primitives underlying every channel representation.

The package-wide conventions are fixed here:

* vectorization is row-major: ``vec`` stacks the rows of a d x d matrix
  into a length-d**2 vector and ``mat`` is its exact inverse;
* matrix comparisons are tolerance-based in the entrywise max norm,
  never bitwise, with :data:`DEFAULT_TOL` as the package default;
* Hermitian eigendecompositions return eigenvalues sorted in descending
  order with phase-canonicalized eigenvectors, so downstream conversions
  are deterministic up to eigenspace degeneracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotHermitianError

#: Default absolute tolerance (entrywise max norm) for every comparison.
DEFAULT_TOL = 1e-9

#: Relative factor for rank decisions: eigenvalues/singular values below
#: RANK_REL_TOL * (matrix dimension) * (largest value) count as zero.
RANK_REL_TOL = 1e-10


def as_complex_matrix(m) -> np.ndarray:
    """Coerce input to a 2-D complex ndarray without copying when possible."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    return arr


def max_abs_diff(a, b) -> float:
    """Entrywise max-norm distance between two arrays of equal shape."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.abs(a - b).max())


def matrices_equal(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Tolerance-based equality in the entrywise max norm."""
    return max_abs_diff(a, b) <= tol


def vec(m) -> np.ndarray:
    """Stack the rows of a square matrix into a vector.

    Element ``r*d + c`` of the output equals ``m[r, c]``.
    """
    arr = as_complex_matrix(m)
    rows, cols = arr.shape
    if rows != cols:
        raise DimensionError(f"vec requires a square matrix, got {rows}x{cols}")
    return arr.reshape(-1).copy()


def mat(v, d: int | None = None) -> np.ndarray:
    """Reshape a length-d**2 vector into a d x d matrix, row by row.

    The inverse of :func:`vec`: ``mat(v)[r, c] == v[r*d + c]``.  When ``d``
    is omitted it is inferred from the vector length, which must then be a
    perfect square.
    """
    arr = np.asarray(v, dtype=complex).reshape(-1)
    if d is None:
        d = math.isqrt(arr.size)
    if d <= 0 or d * d != arr.size:
        raise DimensionError(f"vector of length {arr.size} is not d*d for d={d}")
    return arr.reshape(d, d).copy()


@dataclass(eq=False)
class EigenDecomposition:
    """Spectral data of a Hermitian matrix.

    ``eigenvalues`` are real and sorted descending; ``eigenvectors`` holds
    the matching orthonormal eigenvectors as columns, each phase-fixed so
    its largest-magnitude entry is real and nonnegative.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Return sum_n lambda_n |e_n><e_n|."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _canonicalize_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real >= 0."""
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        pivot = col[np.argmax(np.abs(col))]
        mag = abs(pivot)
        if mag > 0.0:
            out[:, k] = col * (mag / pivot)
    return out


def hermitian_eig(m, tol: float = DEFAULT_TOL) -> EigenDecomposition:
    """Eigendecompose a Hermitian matrix with deterministic output order.

    Args:
        m: square matrix with ``max|m - m^dag| <= tol``.
        tol: Hermiticity tolerance (entrywise max norm).

    Raises:
        NotHermitianError: the input is non-Hermitian beyond ``tol``.
    """
    arr = as_complex_matrix(m)
    rows, cols = arr.shape
    if rows != cols:
        raise DimensionError(f"expected a square matrix, got {rows}x{cols}")
    defect = max_abs_diff(arr, arr.conj().T)
    if defect > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: max|m - m^dag| = {defect:.3e} > tol = {tol:.3e}"
        )
    w, v = np.linalg.eigh(arr)
    w = w[::-1].copy()
    v = _canonicalize_phases(v[:, ::-1])
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def rank_cutoff(dimension: int, largest: float) -> float:
    """Threshold below which a spectral value counts as numerically zero."""
    return RANK_REL_TOL * dimension * max(largest, 0.0)


def matrix_rank(m) -> int:
    """Rank via singular values with the package's relative cutoff."""
    arr = as_complex_matrix(m)
    if arr.size == 0 or not arr.any():
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    cutoff = rank_cutoff(max(arr.shape), float(s[0]))
    return int((s > cutoff).sum())
