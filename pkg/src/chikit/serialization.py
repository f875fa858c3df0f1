"""JSON marshalling for matrices and channel documents.

Matrix schema (used repo-wide): an object with "rows", "cols", and
"entries", the latter a flat row-major list of [re, im] pairs.  A channel
document wraps one representation of a channel: a dynamical matrix, a
Kraus operator list, or a process matrix tagged with its basis kind and
scaling convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .bases import BasisKind
from .channels import ChiConvention, ChiMatrix, DynamicalMatrix, KrausSet
from .errors import SchemaError


class Representation(str, Enum):
    DYNAMICAL = "dynamical"
    KRAUS = "kraus"
    CHI = "chi"


def matrix_to_json_dict(m) -> dict:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise SchemaError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    entries = [[float(v.real), float(v.imag)] for v in arr.ravel()]
    return {"rows": arr.shape[0], "cols": arr.shape[1], "entries": entries}


def matrix_from_json_dict(data) -> np.ndarray:
    if not isinstance(data, dict):
        raise SchemaError(f"matrix object expected, got {type(data).__name__}")
    try:
        rows = int(data["rows"])
        cols = int(data["cols"])
        entries = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed matrix object: {exc}") from exc
    if rows < 1 or cols < 1:
        raise SchemaError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise SchemaError(
            f"matrix of {rows}x{cols} needs {rows * cols} entries, "
            f"got {len(entries) if isinstance(entries, list) else 'non-list'}"
        )
    flat = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError(f"entry {i} is not a [re, im] pair: {pair!r}")
        flat[i] = complex(float(pair[0]), float(pair[1]))
    return flat.reshape(rows, cols)


@dataclass(eq=False)
class ChannelDocument:
    """One channel in one representation, plus free-form metadata."""

    representation: Representation
    dim: int
    payload: object  # ndarray for dynamical/chi, list[ndarray] for kraus
    basis_kind: BasisKind | None = None
    convention: ChiConvention | None = None
    metadata: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        if self.representation == Representation.KRAUS:
            payload = [matrix_to_json_dict(k) for k in self.payload]
        else:
            payload = matrix_to_json_dict(self.payload)
        return {
            "representation": self.representation.value,
            "dim": self.dim,
            "basis_kind": self.basis_kind.value if self.basis_kind else None,
            "convention": self.convention.value if self.convention else None,
            "payload": payload,
            "metadata": dict(self.metadata),
        }

    def as_kraus_set(self) -> KrausSet:
        if self.representation != Representation.KRAUS:
            raise SchemaError(f"document holds {self.representation.value}, not kraus")
        return KrausSet(dim=self.dim, operators=list(self.payload))

    def as_dynamical(self) -> DynamicalMatrix:
        if self.representation != Representation.DYNAMICAL:
            raise SchemaError(
                f"document holds {self.representation.value}, not dynamical"
            )
        return DynamicalMatrix(dim=self.dim, matrix=self.payload)

    def as_chi(self) -> ChiMatrix:
        if self.representation != Representation.CHI:
            raise SchemaError(f"document holds {self.representation.value}, not chi")
        if self.basis_kind is None or self.convention is None:
            raise SchemaError("chi document lacks basis_kind/convention tags")
        return ChiMatrix(
            dim_sq=self.dim * self.dim,
            matrix=self.payload,
            basis_kind=self.basis_kind,
            convention=self.convention,
        )


def channel_document_from_json_dict(data) -> ChannelDocument:
    if not isinstance(data, dict):
        raise SchemaError("channel document must be a JSON object")
    try:
        representation = Representation(data["representation"])
        dim = int(data["dim"])
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"malformed channel document: {exc}") from exc
    if dim < 1:
        raise SchemaError(f"dim must be positive, got {dim}")
    raw_payload = data.get("payload")
    if representation == Representation.KRAUS:
        if not isinstance(raw_payload, list) or not raw_payload:
            raise SchemaError("kraus payload must be a nonempty list of matrices")
        payload = [matrix_from_json_dict(m) for m in raw_payload]
        expected = [(dim, dim)] * len(payload)
    else:
        payload = matrix_from_json_dict(raw_payload)
        expected = [(dim * dim, dim * dim)]
    shapes = [p.shape for p in payload] if isinstance(payload, list) else [payload.shape]
    for shape, want in zip(shapes, expected):
        if shape != want:
            raise SchemaError(
                f"{representation.value} payload shape {shape} does not match "
                f"dim={dim} (expected {want})"
            )
    basis_kind = data.get("basis_kind")
    convention = data.get("convention")
    try:
        basis_kind = BasisKind(basis_kind) if basis_kind is not None else None
        convention = ChiConvention(convention) if convention is not None else None
    except ValueError as exc:
        raise SchemaError(f"malformed channel document: {exc}") from exc
    if representation == Representation.CHI and (
        basis_kind is None or convention is None
    ):
        raise SchemaError("chi document requires basis_kind and convention")
    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise SchemaError("metadata must be an object")
    return ChannelDocument(
        representation=representation,
        dim=dim,
        payload=payload,
        basis_kind=basis_kind,
        convention=convention,
        metadata=metadata,
    )


def document_from_kraus(ks: KrausSet, metadata: dict | None = None) -> ChannelDocument:
    return ChannelDocument(
        representation=Representation.KRAUS,
        dim=ks.dim,
        payload=list(ks.operators),
        metadata=metadata or {},
    )


def document_from_dynamical(
    b: DynamicalMatrix, metadata: dict | None = None
) -> ChannelDocument:
    return ChannelDocument(
        representation=Representation.DYNAMICAL,
        dim=b.dim,
        payload=b.matrix,
        metadata=metadata or {},
    )


def document_from_chi(chi: ChiMatrix, metadata: dict | None = None) -> ChannelDocument:
    dim = int(np.sqrt(chi.dim_sq))
    return ChannelDocument(
        representation=Representation.CHI,
        dim=dim,
        payload=chi.matrix,
        basis_kind=chi.basis_kind,
        convention=chi.convention,
        metadata=metadata or {},
    )


def load_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError:
        raise
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc


def load_channel_document(path) -> ChannelDocument:
    return channel_document_from_json_dict(load_json(path))


def save_channel_document(doc: ChannelDocument, path) -> None:
    Path(path).write_text(
        json.dumps(doc.to_json_dict(), indent=2) + "\n", encoding="utf-8"
    )
