import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chikit.bases import (
    BasisKind,
    basis_for,
    gell_mann_basis,
    pauli_tensor_basis,
    trace_coefficient,
)
from chikit.errors import DimensionError, SizeCapError

from conftest import I2, PAULI_1Q, SX, SY, SZ

UNITS = {1, -1, 1j, -1j}


def test_single_qubit_elements_are_the_paulis():
    basis = pauli_tensor_basis(1)
    for el, ref in zip(basis.elements, [I2, SX, SY, SZ]):
        assert np.array_equal(el, ref)
    assert basis.normalization == 2.0
    assert basis.kind == BasisKind.PAULI_TENSOR


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pauli_tensor_nonzero_structure(n):
    basis = pauli_tensor_basis(n)
    d = 2**n
    assert len(basis) == d * d
    for el in basis.elements:
        nz = el[np.abs(el) > 0]
        assert nz.size == d
        assert set(nz.tolist()) <= UNITS
        # exactly one nonzero per row and per column
        mask = np.abs(el) > 0
        assert np.array_equal(mask.sum(axis=0), np.ones(d, dtype=int))
        assert np.array_equal(mask.sum(axis=1), np.ones(d, dtype=int))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pauli_tensor_gram_exact(n):
    # brute-force pairwise traces; entries are exact, so compare with ==
    basis = pauli_tensor_basis(n)
    d = 2**n
    for i in range(d * d):
        for j in range(d * d):
            t = np.trace(basis.elements[i] @ basis.elements[j])
            assert t == (d if i == j else 0)


def test_pauli_tensor_ordering_is_lexicographic():
    basis = pauli_tensor_basis(2)
    assert np.array_equal(basis.elements[1], np.kron(I2, SX))
    assert np.array_equal(basis.elements[4], np.kron(SX, I2))
    assert np.array_equal(basis.elements[7], np.kron(SX, SZ))


def test_pauli_tensor_size_cap():
    with pytest.raises(SizeCapError):
        pauli_tensor_basis(7)
    with pytest.raises(SizeCapError):
        pauli_tensor_basis(3, size_cap=16)
    with pytest.raises(DimensionError):
        pauli_tensor_basis(0)


def test_gell_mann_d2_reduces_to_paulis():
    basis = gell_mann_basis(2)
    for el, ref in zip(basis.elements, [I2, SX, SY, SZ]):
        assert np.allclose(el, ref, atol=1e-15)
    assert basis.normalization == 2.0


def test_gell_mann_d3_structure():
    basis = gell_mann_basis(3)
    assert len(basis) == 9
    lam8 = np.diag([1, 1, -2]) / np.sqrt(3)
    assert np.allclose(basis.elements[8], lam8, atol=1e-15)
    # the six off-diagonal generators carry entries from {+-1, +-i} only
    off_diagonal = [basis.elements[i] for i in (1, 2, 4, 5, 6, 7)]
    for el in off_diagonal:
        nz = el[np.abs(el) > 0]
        assert set(nz.tolist()) <= UNITS


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_gell_mann_gram(d):
    basis = gell_mann_basis(d)
    gram = np.einsum("iab,jab->ij", basis.elements.conj(), basis.elements)
    assert np.abs(gram - 2.0 * np.eye(d * d)).max() <= 1e-12


def test_gell_mann_rejects_small_dim():
    with pytest.raises(DimensionError):
        gell_mann_basis(1)


def test_basis_for_dispatch():
    assert basis_for(BasisKind.PAULI_TENSOR, 4).dim == 4
    assert basis_for(BasisKind.GELL_MANN, 3).dim == 3
    with pytest.raises(DimensionError):
        basis_for(BasisKind.PAULI_TENSOR, 3)


def test_trace_coefficient_two_elements_contribute():
    # tr([[a, b], [x, y]] sigma_x) = b + x
    k = np.array([[0.3, 0.7], [0.2, 0.9]], dtype=complex)
    assert trace_coefficient(k, SX) == pytest.approx(0.7 + 0.2)


def test_trace_coefficient_zero_matrix():
    assert trace_coefficient(np.zeros((2, 2)), SY) == 0


def test_trace_coefficient_dimension_mismatch():
    with pytest.raises(DimensionError):
        trace_coefficient(np.eye(2), np.eye(3))


@given(
    st.integers(min_value=1, max_value=2),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_single_entry_trace_against_pauli_tensor_is_unit_multiple(n, seed):
    rng = np.random.default_rng(seed)
    basis = pauli_tensor_basis(n)
    d = 2**n
    v = complex(rng.standard_normal(), rng.standard_normal())
    k = np.zeros((d, d), dtype=complex)
    k[rng.integers(d), rng.integers(d)] = v
    lam = basis.elements[rng.integers(d * d)]
    t = trace_coefficient(k, lam)
    assert t == 0 or any(t == v * u for u in UNITS)
