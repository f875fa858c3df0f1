"""Sparsity, rank, and distinct-entry structure of channel matrices.

The central statistic is the number of distinct absolute values among the
entries of a process matrix.  Distinctness uses greedy clustering of the
sorted magnitudes: a value opens a new cluster exactly when it exceeds the
current cluster's first (smallest) member by more than the tolerance, which
keeps the count deterministic and O(N log N).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import OperatorBasis
from .channels import KrausSet, _trace_coefficient_rows
from .errors import DomainError
from .linalg import DEFAULT_TOL, as_complex_matrix, matrix_rank


@dataclass(eq=False)
class SparsityReport:
    """Structure summary of one matrix."""

    nnz: int
    rank: int
    dim: int
    distinct_nonzero_abs: int
    distinct_abs_values: np.ndarray
    includes_zero_variant: int

    def to_dict(self) -> dict:
        return {
            "nnz": self.nnz,
            "rank": self.rank,
            "dim": self.dim,
            "distinct_nonzero_abs": self.distinct_nonzero_abs,
            "distinct_abs_values": [float(v) for v in self.distinct_abs_values],
            "includes_zero_variant": self.includes_zero_variant,
        }


def distinct_abs_entries(
    m, tol: float = DEFAULT_TOL, include_zero: bool = False
) -> tuple[int, np.ndarray]:
    """Count distinct absolute values among the entries of a matrix.

    Magnitudes <= tol are dropped, unless ``include_zero`` is set, in which
    case they form one extra zero cluster (counted only when present).
    Returns the cluster count and the sorted cluster representatives.
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    values = np.abs(np.asarray(m, dtype=complex)).ravel()
    nonzero = np.sort(values[values > tol])
    reps = []
    i = 0
    while i < nonzero.size:
        reps.append(float(nonzero[i]))
        i = int(np.searchsorted(nonzero, nonzero[i] + tol, side="right"))
    count = len(reps)
    if include_zero and nonzero.size < values.size:
        count += 1
        reps = [0.0] + reps
    return count, np.array(reps)


def sparsity_report(m, tol: float = DEFAULT_TOL) -> SparsityReport:
    """Summarize nonzero count, rank, and distinct-magnitude structure."""
    arr = as_complex_matrix(m)
    nnz = int((np.abs(arr) > tol).sum())
    count, values = distinct_abs_entries(arr, tol, include_zero=False)
    count_with_zero, _ = distinct_abs_entries(arr, tol, include_zero=True)
    return SparsityReport(
        nnz=nnz,
        rank=matrix_rank(arr),
        dim=int(min(arr.shape)),
        distinct_nonzero_abs=count,
        distinct_abs_values=values,
        includes_zero_variant=count_with_zero,
    )


def single_contributor_probability(d: int, r: int) -> float:
    """Probability that exactly one of d trace-relevant cells is occupied.

    For an operator with r nonzero entries placed uniformly among d**2
    cells, each basis element reads d cells; the chance that exactly one of
    them is occupied is d * (1 - r/d**2)**(d-1) * (r/d**2).
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if r < 0 or r > d * d:
        raise DomainError(f"r must lie in [0, d^2] = [0, {d * d}], got {r}")
    p = r / d**2
    return float(d * (1.0 - p) ** (d - 1) * p)


def distinct_entry_bound(r: int) -> int:
    """Reference bound r**2 on the distinct-entry count of a rank-r map."""
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    return r * r


def trace_value_set(
    ks: KrausSet, basis: OperatorBasis, tol: float = DEFAULT_TOL
) -> list[complex]:
    """Distinct nonzero trace coefficients tr(K_n a_i) across all n and i.

    Values within ``tol`` of an earlier representative (in the complex
    plane) are merged.  Returns representatives sorted by (real, imag).
    """
    if basis.dim != ks.dim:
        raise DomainError(f"basis dim {basis.dim} does not match Kraus dim {ks.dim}")
    if not ks.operators:
        return []
    values = _trace_coefficient_rows(ks.operators, basis).ravel()
    values = values[np.abs(values) > tol]
    order = np.lexsort((values.imag, values.real))
    reps: list[complex] = []
    for v in values[order]:
        v = complex(v)
        if all(abs(v - r) > tol for r in reps):
            reps.append(v)
    return reps
