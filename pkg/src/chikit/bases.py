"""Operator bases for expanding channels: Pauli tensor products and Gell-Mann sets.

Both constructors return an :class:`OperatorBasis` whose ``normalization``
scalar ``t`` satisfies ``tr(a_i^dag a_j) = t * delta_ij`` over the whole
element list.  Pauli tensor elements are exact: every entry is one of
``0, +1, -1, +1j, -1j``, so trace orthogonality holds with equality, not
merely within floating-point tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

import numpy as np

from .errors import DimensionError, SizeCapError
from .linalg import as_complex_matrix

#: Largest allowed d**2 for basis construction (guards accidental huge kron).
DEFAULT_SIZE_CAP = 4096

_PAULI_1Q = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


class BasisKind(str, Enum):
    PAULI_TENSOR = "pauli"
    GELL_MANN = "gellmann"


@dataclass(eq=False)
class OperatorBasis:
    """Ordered, trace-orthogonal operator basis of d**2 elements.

    ``elements`` is an array of shape (d**2, d, d); ``normalization`` is the
    scalar t with tr(a_i^dag a_j) = t * delta_ij.
    """

    dim: int
    elements: np.ndarray
    kind: BasisKind
    normalization: float

    def __len__(self) -> int:
        return self.elements.shape[0]


def pauli_tensor_basis(n_qubits: int, size_cap: int = DEFAULT_SIZE_CAP) -> OperatorBasis:
    """Build the n-qubit basis of tensor products of I, sigma_x, sigma_y, sigma_z.

    Elements are ordered lexicographically by per-qubit index (I=0, x=1,
    y=2, z=3), so element ``i`` is the tensor product of the single-qubit
    operators given by the base-4 digits of ``i``.  Each element has exactly
    d = 2**n_qubits nonzero entries, all in {+1, -1, +1j, -1j}, and
    tr(a_i a_j) = d * delta_ij holds exactly.

    Raises:
        DimensionError: ``n_qubits < 1``.
        SizeCapError: d**2 exceeds ``size_cap``.
    """
    if n_qubits < 1:
        raise DimensionError(f"n_qubits must be >= 1, got {n_qubits}")
    d = 2**n_qubits
    if d * d > size_cap:
        raise SizeCapError(
            f"n_qubits={n_qubits} gives d^2={d * d} > size cap {size_cap}"
        )
    elements = np.empty((d * d, d, d), dtype=complex)
    for i, digits in enumerate(product(range(4), repeat=n_qubits)):
        el = _PAULI_1Q[digits[0]]
        for k in digits[1:]:
            el = np.kron(el, _PAULI_1Q[k])
        elements[i] = el
    return OperatorBasis(
        dim=d, elements=elements, kind=BasisKind.PAULI_TENSOR, normalization=float(d)
    )


def _gell_mann_diagonal(level: int, d: int) -> np.ndarray:
    """Diagonal generator: sqrt(2/(l(l+1))) * diag(1,...,1,-l,0,...,0)."""
    diag = np.zeros(d, dtype=complex)
    diag[:level] = 1.0
    diag[level] = -float(level)
    return np.sqrt(2.0 / (level * (level + 1))) * np.diag(diag)


def gell_mann_basis(d: int) -> OperatorBasis:
    """Build the generalized Gell-Mann generators plus a scaled identity.

    Element 0 is sqrt(2/d) * I so the complete set of d**2 operators shares
    the generator normalization tr(a_i a_j) = 2 * delta_ij.  The remaining
    d**2 - 1 elements follow the standard ordering: for each k = 1..d-1,
    the symmetric and antisymmetric pair for every j < k, then the diagonal
    generator of level k.  At d=2 this reduces to [I, sigma_x, sigma_y,
    sigma_z]; at d=3 element 8 is diag(1, 1, -2)/sqrt(3).

    Raises:
        DimensionError: ``d < 2``.
    """
    if d < 2:
        raise DimensionError(f"Gell-Mann basis needs d >= 2, got {d}")
    elements = np.empty((d * d, d, d), dtype=complex)
    elements[0] = np.sqrt(2.0 / d) * np.eye(d, dtype=complex)
    i = 1
    for k in range(1, d):
        for j in range(k):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = 1.0
            sym[k, j] = 1.0
            elements[i] = sym
            anti = np.zeros((d, d), dtype=complex)
            anti[j, k] = -1j
            anti[k, j] = 1j
            elements[i + 1] = anti
            i += 2
        elements[i] = _gell_mann_diagonal(k, d)
        i += 1
    return OperatorBasis(
        dim=d, elements=elements, kind=BasisKind.GELL_MANN, normalization=2.0
    )


def trace_coefficient(k, lam) -> complex:
    """Return tr(k @ lam), the expansion coefficient of k against one element."""
    k = as_complex_matrix(k)
    lam = as_complex_matrix(lam)
    if k.shape != lam.shape or k.shape[0] != k.shape[1]:
        raise DimensionError(f"incompatible shapes {k.shape} and {lam.shape}")
    return complex(np.trace(k @ lam))


def basis_for(kind: BasisKind, dim: int, size_cap: int = DEFAULT_SIZE_CAP) -> OperatorBasis:
    """Construct the basis of the given kind for dimension ``dim``.

    The Pauli tensor basis requires ``dim`` to be a power of two.
    """
    if kind == BasisKind.PAULI_TENSOR:
        n = int(dim).bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise DimensionError(
                f"Pauli tensor basis needs dim = 2**n_qubits, got dim={dim}"
            )
        return pauli_tensor_basis(n, size_cap=size_cap)
    if kind == BasisKind.GELL_MANN:
        return gell_mann_basis(dim)
    raise DimensionError(f"unknown basis kind: {kind!r}")
