"""Self-consistency checks for a single channel.

Given one Kraus set, the suite rebuilds the other two representations,
checks that all three act identically on random density matrices, runs
both conversion round trips, confirms the process matrix is invariant
under unitary mixing of the Kraus operators, and checks its Hermiticity
and positive semidefiniteness.  Round trips compare the matrices, not the
operator lists, since Kraus sets are only unique up to unitary mixing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import distinct_abs_entries
from .bases import OperatorBasis
from .channels import (
    ChiConvention,
    KrausSet,
    apply_chi,
    apply_dynamical,
    apply_kraus,
    chi_from_kraus,
    dynamical_from_kraus,
    kraus_from_chi,
    kraus_from_dynamical,
)
from .linalg import DEFAULT_TOL, max_abs_diff


@dataclass(eq=False)
class CheckResult:
    name: str
    passed: bool
    detail: str


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_density(d: int, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrix (normalized Wishart)."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def mix_kraus(ks: KrausSet, unitary: np.ndarray) -> KrausSet:
    """Replace K_n by sum_m U[n, m] K_m; the channel is unchanged."""
    stack = np.stack(ks.operators)
    mixed = np.einsum("nm,mab->nab", unitary, stack)
    return KrausSet(dim=ks.dim, operators=list(mixed))


def verification_suite(
    ks: KrausSet,
    basis: OperatorBasis,
    convention: ChiConvention = ChiConvention.TRACE_COEFFICIENT,
    tol: float = DEFAULT_TOL,
    trials: int = 10,
    seed: int = 0,
) -> tuple[list[CheckResult], int]:
    """Run all checks; returns (results, distinct nonzero |chi entry| count)."""
    rng = np.random.default_rng(seed)
    b = dynamical_from_kraus(ks)
    chi = chi_from_kraus(ks, basis, convention)
    checks = []

    dev = 0.0
    for _ in range(trials):
        rho = random_density(ks.dim, rng)
        out_k = apply_kraus(ks, rho)
        dev = max(dev, max_abs_diff(out_k, apply_dynamical(b, rho)))
        dev = max(dev, max_abs_diff(out_k, apply_chi(chi, basis, rho)))
    checks.append(
        CheckResult(
            "representation equivalence",
            dev <= tol,
            f"max deviation {dev:.3e} over {trials} density matrices (tol {tol:.1e})",
        )
    )

    round_tol = 10 * tol
    b_round = dynamical_from_kraus(kraus_from_dynamical(b, tol))
    dev_b = max_abs_diff(b.matrix, b_round.matrix)
    checks.append(
        CheckResult(
            "round trip dynamical->kraus->dynamical",
            dev_b <= round_tol,
            f"max deviation {dev_b:.3e} (tol {round_tol:.1e})",
        )
    )
    chi_round = chi_from_kraus(kraus_from_chi(chi, basis, tol), basis, convention)
    dev_chi = max_abs_diff(chi.matrix, chi_round.matrix)
    checks.append(
        CheckResult(
            "round trip chi->kraus->chi",
            dev_chi <= round_tol,
            f"max deviation {dev_chi:.3e} (tol {round_tol:.1e})",
        )
    )

    if len(ks) >= 1:
        mixed = mix_kraus(ks, haar_unitary(len(ks), rng))
        dev_mix = max_abs_diff(
            chi.matrix, chi_from_kraus(mixed, basis, convention).matrix
        )
        checks.append(
            CheckResult(
                "unitary mixing invariance",
                dev_mix <= tol,
                f"max chi deviation {dev_mix:.3e} (tol {tol:.1e})",
            )
        )

    herm = max_abs_diff(chi.matrix, chi.matrix.conj().T)
    checks.append(
        CheckResult(
            "chi hermitian", herm <= tol, f"max |chi - chi^dag| = {herm:.3e}"
        )
    )
    least = float(np.linalg.eigvalsh(0.5 * (chi.matrix + chi.matrix.conj().T))[0])
    checks.append(
        CheckResult(
            "chi positive semidefinite",
            least >= -tol,
            f"smallest eigenvalue {least:.3e}",
        )
    )

    distinct, _ = distinct_abs_entries(chi.matrix, tol)
    return checks, distinct
