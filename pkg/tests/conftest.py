"""Shared helpers: independent reference constructions used as oracles.

These deliberately avoid the package's own conversion code paths, so tests
can compare library outputs against a second route.
"""

import numpy as np
import pytest

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_1Q = [I2, SX, SY, SZ]


def random_density(d, rng):
    """Random full-rank density matrix (normalized Wishart)."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_tp_kraus(d, r, rng):
    """Random trace-preserving Kraus operators via dense Ginibre + S^(-1/2)."""
    ops = [
        rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        for _ in range(r)
    ]
    s = sum(k.conj().T @ k for k in ops)
    w, v = np.linalg.eigh(s)
    s_inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return [k @ s_inv_sqrt for k in ops]


def haar_unitary(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_hermitian(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (g + g.conj().T)


def apply_kraus_reference(operators, rho):
    """Independent operator-sum evaluation."""
    return sum(k @ rho @ k.conj().T for k in operators)


def chi_reference(operators, basis_elements):
    """Independent Gram construction of the trace-coefficient process matrix."""
    n = len(basis_elements)
    chi = np.zeros((n, n), dtype=complex)
    for k in operators:
        coeffs = np.array([np.trace(k @ lam) for lam in basis_elements])
        chi += np.outer(coeffs, coeffs.conj())
    return chi


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
