import json

import numpy as np
import pytest

from chikit.bases import BasisKind, pauli_tensor_basis
from chikit.channels import ChiConvention, KrausSet, chi_from_kraus, dynamical_from_kraus
from chikit.errors import SchemaError
from chikit.linalg import max_abs_diff
from chikit.serialization import (
    Representation,
    channel_document_from_json_dict,
    document_from_chi,
    document_from_dynamical,
    document_from_kraus,
    load_channel_document,
    matrix_from_json_dict,
    matrix_to_json_dict,
    save_channel_document,
)


def test_matrix_round_trip(rng):
    m = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    back = matrix_from_json_dict(matrix_to_json_dict(m))
    assert np.array_equal(back, m)


def test_matrix_schema_shape():
    doc = matrix_to_json_dict(np.array([[1 + 2j, 0], [0, 1]]))
    assert doc["rows"] == 2 and doc["cols"] == 2
    assert doc["entries"][0] == [1.0, 2.0]
    assert len(doc["entries"]) == 4


@pytest.mark.parametrize(
    "bad",
    [
        {"rows": 2, "cols": 2},
        {"rows": 2, "cols": 2, "entries": [[1, 0]] * 3},
        {"rows": 2, "cols": 2, "entries": [[1, 0], [1], [0, 0], [0, 0]]},
        {"rows": 0, "cols": 2, "entries": []},
        "nope",
    ],
)
def test_matrix_schema_rejects_malformed(bad):
    with pytest.raises(SchemaError):
        matrix_from_json_dict(bad)


def test_kraus_document_round_trip(tmp_path, rng):
    ops = [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2)]
    doc = document_from_kraus(KrausSet(dim=2, operators=ops), {"note": "test"})
    path = tmp_path / "chan.json"
    save_channel_document(doc, path)
    back = load_channel_document(path)
    assert back.representation == Representation.KRAUS
    assert back.metadata == {"note": "test"}
    for a, b in zip(back.payload, ops):
        assert max_abs_diff(a, b) == 0


def test_chi_document_round_trip(tmp_path, rng):
    basis = pauli_tensor_basis(1)
    ops = [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))]
    chi = chi_from_kraus(KrausSet(dim=2, operators=ops), basis)
    path = tmp_path / "chi.json"
    save_channel_document(document_from_chi(chi), path)
    back = load_channel_document(path).as_chi()
    assert back.basis_kind == BasisKind.PAULI_TENSOR
    assert back.convention == ChiConvention.TRACE_COEFFICIENT
    assert max_abs_diff(back.matrix, chi.matrix) == 0


def test_dynamical_document_round_trip(tmp_path, rng):
    ops = [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))]
    b = dynamical_from_kraus(KrausSet(dim=2, operators=ops))
    path = tmp_path / "b.json"
    save_channel_document(document_from_dynamical(b), path)
    back = load_channel_document(path).as_dynamical()
    assert max_abs_diff(back.matrix, b.matrix) == 0


def test_chi_document_requires_tags():
    payload = matrix_to_json_dict(np.eye(4))
    doc = {"representation": "chi", "dim": 2, "payload": payload}
    with pytest.raises(SchemaError):
        channel_document_from_json_dict(doc)


def test_document_rejects_payload_shape_mismatch():
    payload = matrix_to_json_dict(np.eye(3))
    doc = {"representation": "dynamical", "dim": 2, "payload": payload}
    with pytest.raises(SchemaError):
        channel_document_from_json_dict(doc)


def test_document_rejects_unknown_representation():
    with pytest.raises(SchemaError):
        channel_document_from_json_dict({"representation": "ptm", "dim": 2})


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(SchemaError):
        load_channel_document(path)


def test_saved_document_is_valid_json(tmp_path, rng):
    ops = [rng.standard_normal((2, 2))]
    path = tmp_path / "chan.json"
    save_channel_document(document_from_kraus(KrausSet(dim=2, operators=ops)), path)
    data = json.loads(path.read_text())
    assert data["representation"] == "kraus"
    assert data["dim"] == 2
