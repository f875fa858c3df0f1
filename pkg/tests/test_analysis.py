from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chikit.analysis import (
    distinct_abs_entries,
    distinct_entry_bound,
    single_contributor_probability,
    sparsity_report,
    trace_value_set,
)
from chikit.bases import gell_mann_basis, pauli_tensor_basis
from chikit.channels import KrausSet, chi_from_kraus
from chikit.errors import DomainError

UNITS = {1, -1, 1j, -1j}
PAULI = pauli_tensor_basis(1)


def chi1(a1, a2):
    m1 = np.array([[a1, 0], [0, 0]], dtype=complex)
    m2 = np.array([[0, a2], [0, 0]], dtype=complex)
    return chi_from_kraus(KrausSet(dim=2, operators=[m1, m2]), PAULI).matrix


# --- sparsity_report -------------------------------------------------------


def test_report_zero_matrix():
    report = sparsity_report(np.zeros((3, 3)))
    assert (report.nnz, report.rank, report.distinct_nonzero_abs) == (0, 0, 0)


def test_report_single_entry():
    report = sparsity_report(np.array([[0, 0.7], [0, 0]]))
    assert report.nnz == 1
    assert report.rank == 1
    assert report.distinct_nonzero_abs == 1
    assert report.includes_zero_variant == 2


def test_rank_bounded_by_sparsity(rng):
    # brute-force check of rank <= min(s, d) on random sparse matrices
    for _ in range(100):
        d = int(rng.integers(2, 9))
        s = int(rng.integers(1, d * d + 1))
        m = np.zeros(d * d, dtype=complex)
        pos = rng.choice(d * d, size=s, replace=False)
        m[pos] = rng.standard_normal(s) + 1j * rng.standard_normal(s)
        m = m.reshape(d, d)
        oracle_rank = int(
            (np.linalg.svd(m, compute_uv=False) > 1e-10).sum()
        )
        report = sparsity_report(m)
        assert report.rank == oracle_rank
        assert report.rank <= min(s, d)


# --- distinct_abs_entries --------------------------------------------------


def test_distinct_on_printed_chi():
    count, values = distinct_abs_entries(chi1(2.0, 3.0))
    assert count == 2
    assert np.allclose(values, [4.0, 9.0])


def test_distinct_on_diagonal_pair_structure():
    s, d = 2.0**2 + 3.0**2, 2.0**2 - 3.0**2
    chi2 = np.array([[s, 0, 0, d], [0, 0, 0, 0], [0, 0, 0, 0], [d, 0, 0, s]])
    count, values = distinct_abs_entries(chi2)
    assert count == 2
    assert np.allclose(values, [5.0, 13.0])


def test_distinct_identity():
    count, values = distinct_abs_entries(np.eye(3))
    assert count == 1
    assert np.allclose(values, [1.0])


def test_distinct_include_zero():
    assert distinct_abs_entries(np.eye(3), include_zero=True)[0] == 2
    assert distinct_abs_entries(np.ones((2, 2)), include_zero=True)[0] == 1


def test_distinct_clusters_by_first_member():
    # values within tol of the cluster's first member merge; chains do not
    tol = 1e-3
    m = np.array([[1.0, 1.0 + 0.5 * tol, 1.0 + 1.5 * tol, 5.0]])
    count, values = distinct_abs_entries(m, tol)
    assert count == 3
    assert np.allclose(values, [1.0, 1.0 + 1.5 * tol, 5.0])


def test_distinct_rejects_bad_tol():
    with pytest.raises(DomainError):
        distinct_abs_entries(np.eye(2), tol=0.0)


@given(
    st.integers(min_value=0, max_value=2**32 - 1),
    st.floats(min_value=0.1, max_value=100.0),
)
@settings(max_examples=100, deadline=None)
def test_distinct_count_invariant_under_global_scaling(seed, scale):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    base, _ = distinct_abs_entries(m)
    scaled, _ = distinct_abs_entries(m * scale, tol=1e-9 * scale)
    assert base == scaled


# --- probability formula ---------------------------------------------------


def test_probability_zero_sparsity():
    for d in (1, 2, 8):
        assert single_contributor_probability(d, 0) == 0.0


def test_probability_limiting_case():
    assert single_contributor_probability(1, 1) == 1.0


def test_probability_exact_rational_oracle():
    d, r = 8, 3
    exact = Fraction(d) * (1 - Fraction(r, d * d)) ** (d - 1) * Fraction(r, d * d)
    value = single_contributor_probability(d, r)
    assert abs(value - float(exact)) <= 1e-12
    assert value == pytest.approx(0.2680, abs=5e-5)


def test_probability_domain_check():
    with pytest.raises(DomainError):
        single_contributor_probability(2, 5)


def test_probability_monotone_in_small_r():
    for d in (4, 8, 16):
        values = [single_contributor_probability(d, r) for r in range(0, d + 1)]
        assert all(a < b for a, b in zip(values, values[1:]))


# --- distinct_entry_bound --------------------------------------------------


def test_bound_values():
    assert [distinct_entry_bound(r) for r in (1, 2, 3)] == [1, 4, 9]
    with pytest.raises(DomainError):
        distinct_entry_bound(0)


# --- trace_value_set -------------------------------------------------------


def test_trace_values_single_unit_entry_pauli(rng):
    for _ in range(50):
        d = int(rng.choice([2, 4]))
        basis = pauli_tensor_basis(d.bit_length() - 1)
        k = np.zeros((d, d), dtype=complex)
        k[rng.integers(d), rng.integers(d)] = 1.0
        values = trace_value_set(KrausSet(dim=d, operators=[k]), basis)
        assert values
        assert all(any(abs(v - u) <= 1e-12 for u in UNITS) for v in values)


def test_trace_values_gell_mann_diagonal_escapes_units():
    k = np.zeros((3, 3), dtype=complex)
    k[2, 2] = 1.0
    values = trace_value_set(KrausSet(dim=3, operators=[k]), gell_mann_basis(3))
    assert any(abs(v - (-2 / np.sqrt(3))) <= 1e-12 for v in values)


def test_trace_values_zero_operator():
    ks = KrausSet(dim=2, operators=[np.zeros((2, 2))])
    assert trace_value_set(ks, PAULI) == []


# --- single-unit-entry ensembles ------------------------------------------


def test_single_unit_entry_pair_has_one_distinct_magnitude(rng):
    # any set of <= 2 operators with one unit-magnitude entry each
    for _ in range(100):
        d = int(rng.choice([2, 4, 8]))
        basis = pauli_tensor_basis(d.bit_length() - 1)
        ops = []
        for _ in range(int(rng.integers(1, 3))):
            k = np.zeros((d, d), dtype=complex)
            phase = np.exp(2j * np.pi * rng.random())
            k[rng.integers(d), rng.integers(d)] = phase
            ops.append(k)
        chi = chi_from_kraus(KrausSet(dim=d, operators=ops), basis)
        count, _ = distinct_abs_entries(chi.matrix)
        assert count == 1


def test_single_unit_entry_trace_preserving_qubit_sets(rng):
    # trace-preserving single-unit-entry sets at d=2 always count 1
    for _ in range(50):
        r0, r1 = rng.integers(2), rng.integers(2)
        k1 = np.zeros((2, 2), dtype=complex)
        k2 = np.zeros((2, 2), dtype=complex)
        k1[r0, 0] = np.exp(2j * np.pi * rng.random())
        k2[r1, 1] = np.exp(2j * np.pi * rng.random())
        ks = KrausSet(dim=2, operators=[k1, k2])
        assert ks.tp_defect <= 1e-12
        chi = chi_from_kraus(ks, PAULI)
        count, _ = distinct_abs_entries(chi.matrix)
        assert count == 1
