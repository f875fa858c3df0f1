#!/usr/bin/env python3
"""Regenerate the channel fixtures in fixtures/.

Two single-entry operator pairs are shipped, each at two instantiations of
the entry values (a1=2, a2=3 and a1=a2=1), as Kraus documents plus the
process matrices they generate in the Pauli basis (trace-coefficient
convention).
"""

import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from chikit.bases import pauli_tensor_basis
from chikit.channels import KrausSet, chi_from_kraus
from chikit.serialization import (
    document_from_chi,
    document_from_kraus,
    save_channel_document,
)

FIXTURES = ROOT / "fixtures"


def upper_pair(a1, a2):
    """Operators with entries at (0,0) and (0,1): everything lands on |0><0|."""
    m1 = np.array([[a1, 0], [0, 0]], dtype=complex)
    m2 = np.array([[0, a2], [0, 0]], dtype=complex)
    return [m1, m2]


def diagonal_pair(a1, a2):
    """Operators with entries at (0,0) and (1,1)."""
    l1 = np.array([[a1, 0], [0, 0]], dtype=complex)
    l2 = np.array([[0, 0], [0, a2]], dtype=complex)
    return [l1, l2]


def main():
    FIXTURES.mkdir(exist_ok=True)
    basis = pauli_tensor_basis(1)
    cases = {
        "reset_pair": upper_pair,
        "diagonal_pair": diagonal_pair,
    }
    for name, build in cases.items():
        for tag, (a1, a2) in {"a2_3": (2.0, 3.0), "unit": (1.0, 1.0)}.items():
            ks = KrausSet(dim=2, operators=build(a1, a2))
            meta = {"name": name, "a1": str(a1), "a2": str(a2)}
            kraus_doc = document_from_kraus(ks, meta)
            save_channel_document(kraus_doc, FIXTURES / f"kraus_{name}_{tag}.json")
            chi = chi_from_kraus(ks, basis)
            chi_doc = document_from_chi(chi, meta)
            save_channel_document(chi_doc, FIXTURES / f"chi_{name}_{tag}.json")
    print(f"wrote {len(cases) * 4} fixtures to {FIXTURES}")


if __name__ == "__main__":
    main()
