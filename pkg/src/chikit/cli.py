"""Command-line front end.

Subcommands: ``basis`` (construct and inspect operator bases), ``convert``
(rewrite a channel document in another representation), ``analyze``
(sparsity/rank/distinct-entry report), ``verify`` (round-trip and
equivalence suite for one channel), and ``simulate`` (distinct-entry
histogram over random sparse trace-preserving ensembles).

All numerical work is delegated to the library modules; this module only
parses flags, moves files, and formats output.  Exit codes: 0 success,
1 usage error, 2 I/O or schema error, 3 numerical precondition failure,
4 ensemble exhaustion (with a machine-readable JSON line on stdout).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .analysis import sparsity_report
from .bases import BasisKind, basis_for
from .channels import ChiConvention, chi_from_kraus, dynamical_from_kraus, kraus_from_chi, kraus_from_dynamical
from .errors import (
    ConventionError,
    DimensionError,
    DomainError,
    EnsembleExhaustedError,
    FormatError,
    NotCompletelyPositiveError,
    NotHermitianError,
    SchemaError,
    SizeCapError,
)
from .linalg import DEFAULT_TOL
from .montecarlo import SimulationConfig, export_histogram, run_histogram
from .serialization import (
    ChannelDocument,
    Representation,
    channel_document_from_json_dict,
    document_from_chi,
    document_from_dynamical,
    document_from_kraus,
    load_json,
    matrix_from_json_dict,
    matrix_to_json_dict,
    save_channel_document,
)
from .verify import verification_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3
EXIT_ENSEMBLE = 4

_NUMERICAL_ERRORS = (
    ConventionError,
    DimensionError,
    DomainError,
    NotCompletelyPositiveError,
    NotHermitianError,
    SizeCapError,
)


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_basis_flags(p, with_convention=True):
    p.add_argument(
        "--basis",
        choices=[k.value for k in BasisKind],
        default=BasisKind.PAULI_TENSOR.value,
        help="operator basis kind (default: pauli)",
    )
    if with_convention:
        p.add_argument(
            "--convention",
            choices=[c.value for c in ChiConvention],
            default=ChiConvention.TRACE_COEFFICIENT.value,
            help="chi scaling convention (default: trace)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chikit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("basis", help="construct an operator basis and print its metadata")
    p.add_argument("--kind", choices=[k.value for k in BasisKind], required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--qubits", type=int, help="qubit count (pauli basis)")
    group.add_argument("--dim", type=int, help="Hilbert-space dimension")
    p.add_argument("--out", help="dump elements as JSON to this path")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("convert", help="rewrite a channel document in another representation")
    p.add_argument("--in", dest="infile", required=True, help="input channel JSON")
    p.add_argument(
        "--to",
        choices=[r.value for r in Representation],
        required=True,
        help="target representation",
    )
    _add_basis_flags(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", required=True, help="output channel JSON")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("analyze", help="sparsity/rank/distinct-entry report for a matrix or channel")
    p.add_argument("--in", dest="infile", required=True, help="matrix or channel JSON")
    _add_basis_flags(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", help="write the report as JSON to this path")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("verify", help="round-trip and equivalence suite for a channel")
    p.add_argument("--in", dest="infile", required=True, help="channel JSON")
    _add_basis_flags(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--trials", type=int, default=10, help="random density matrices to test")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="distinct-entry histogram over random sparse TP ensembles")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rank", type=int, required=True, help="number of Kraus operators")
    p.add_argument("--nnz", type=int, required=True, help="nonzero entries per operator")
    p.add_argument("--realizations", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _add_basis_flags(p)
    p.add_argument("--include-zero", action="store_true", help="count the zero cluster too")
    p.add_argument("--max-rejections", type=int, default=None, help="candidate cap per draw")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", required=True, help="output file path")
    p.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    p.set_defaults(func=_cmd_simulate)

    return parser


def _basis_for_doc(doc: ChannelDocument, kind: BasisKind):
    return basis_for(kind, doc.dim)


def _doc_to_kraus(doc: ChannelDocument, tol: float):
    """Read any representation out of a document as a Kraus set."""
    if doc.representation == Representation.KRAUS:
        return doc.as_kraus_set()
    if doc.representation == Representation.DYNAMICAL:
        return kraus_from_dynamical(doc.as_dynamical(), tol)
    chi = doc.as_chi()
    return kraus_from_chi(chi, _basis_for_doc(doc, doc.basis_kind), tol)


def _cmd_basis(args) -> int:
    kind = BasisKind(args.kind)
    if args.qubits is not None:
        if kind != BasisKind.PAULI_TENSOR:
            raise DomainError("--qubits only applies to the pauli basis")
        dim = 2**args.qubits if args.qubits >= 1 else 0
    else:
        dim = args.dim
    basis = basis_for(kind, dim)
    elements = basis.elements
    gram = np.einsum("iab,jab->ij", elements.conj(), elements)
    gram_defect = float(
        np.abs(gram - basis.normalization * np.eye(len(basis))).max()
    )
    nnz_counts = (np.abs(elements) > 0).sum(axis=(1, 2))
    print(f"kind          : {basis.kind.value}")
    print(f"dim           : {basis.dim}")
    print(f"elements      : {len(basis)}")
    print(f"normalization : {basis.normalization}")
    print(f"nonzeros/elem : {int(nnz_counts.min())}..{int(nnz_counts.max())}")
    print(f"gram defect   : {gram_defect:.3e}")
    if args.out:
        doc = {
            "kind": basis.kind.value,
            "dim": basis.dim,
            "normalization": basis.normalization,
            "elements": [matrix_to_json_dict(el) for el in elements],
        }
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print(f"wrote         : {args.out}")
    return EXIT_OK


def _cmd_convert(args) -> int:
    doc = channel_document_from_json_dict(load_json(args.infile))
    ks = _doc_to_kraus(doc, args.tol)
    target = Representation(args.to)
    if target == Representation.KRAUS:
        out_doc = document_from_kraus(ks, doc.metadata)
    elif target == Representation.DYNAMICAL:
        out_doc = document_from_dynamical(dynamical_from_kraus(ks), doc.metadata)
    else:
        basis = basis_for(BasisKind(args.basis), doc.dim)
        chi = chi_from_kraus(ks, basis, ChiConvention(args.convention))
        out_doc = document_from_chi(chi, doc.metadata)
    save_channel_document(out_doc, args.out)
    print(f"wrote {target.value} document: {args.out}")
    return EXIT_OK


def _analysis_subject(args):
    """Resolve the matrix to analyze and a label describing it."""
    data = load_json(args.infile)
    if isinstance(data, dict) and "representation" in data:
        doc = channel_document_from_json_dict(data)
        if doc.representation == Representation.DYNAMICAL:
            return doc.as_dynamical().matrix, "dynamical matrix"
        if doc.representation == Representation.CHI:
            chi = doc.as_chi()
            return chi.matrix, (
                f"chi matrix ({chi.basis_kind.value}, {chi.convention.value})"
            )
        ks = doc.as_kraus_set()
        basis = basis_for(BasisKind(args.basis), doc.dim)
        chi = chi_from_kraus(ks, basis, ChiConvention(args.convention))
        return chi.matrix, (
            f"chi matrix from kraus ({args.basis}, {args.convention})"
        )
    return matrix_from_json_dict(data), "matrix"


def _cmd_analyze(args) -> int:
    matrix, label = _analysis_subject(args)
    report = sparsity_report(matrix, args.tol)
    values = ", ".join(f"{v:.6g}" for v in report.distinct_abs_values)
    print(f"subject             : {label}")
    print(f"shape               : {matrix.shape[0]}x{matrix.shape[1]}")
    print(f"nnz                 : {report.nnz}")
    print(f"rank                : {report.rank}")
    print(f"distinct nonzero |.|: {report.distinct_nonzero_abs}")
    print(f"with zero cluster   : {report.includes_zero_variant}")
    print(f"values              : {values}")
    if args.out:
        payload = {"subject": label, "tol": args.tol, "report": report.to_dict()}
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        print(f"wrote               : {args.out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    doc = channel_document_from_json_dict(load_json(args.infile))
    ks = _doc_to_kraus(doc, args.tol)
    if doc.representation == Representation.CHI:
        kind, convention = doc.basis_kind, doc.convention
    else:
        kind = BasisKind(args.basis)
        convention = ChiConvention(args.convention)
    basis = basis_for(kind, doc.dim)
    checks, distinct = verification_suite(
        ks, basis, convention, tol=args.tol, trials=args.trials, seed=args.seed
    )
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{c.name:<{width}} : {status} ({c.detail})")
    print(f"distinct nonzero abs values: {distinct}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_NUMERICAL


def _cmd_simulate(args) -> int:
    kwargs = {}
    if args.max_rejections is not None:
        kwargs["max_rejections_per_draw"] = args.max_rejections
    cfg = SimulationConfig(
        dim=args.dim,
        rank=args.rank,
        nnz_per_kraus=args.nnz,
        realizations=args.realizations,
        seed=args.seed,
        tol=args.tol,
        basis_kind=BasisKind(args.basis),
        convention=ChiConvention(args.convention),
        include_zero=args.include_zero,
        **kwargs,
    )
    result = run_histogram(cfg, workers=args.workers)
    Path(args.out).write_bytes(export_histogram(result, args.format))
    share = result.fraction_at_or_below(result.bound)
    print(f"realizations : {result.realizations_completed}")
    print(f"mode         : {result.mode}")
    print(f"bound (r^2)  : {result.bound}")
    print(f"<= bound     : {100.0 * share:.2f}%")
    print(f"acceptance   : {result.acceptance_rate:.4%}")
    print(f"wrote        : {args.out}")
    return EXIT_OK


def dispatch(argv) -> int:
    """Parse argv and run one subcommand, mapping errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except EnsembleExhaustedError as exc:
        print(
            json.dumps(
                {
                    "error": "ensemble_exhausted",
                    "message": str(exc),
                    "attempts": exc.attempts,
                    "realization": exc.realization,
                }
            )
        )
        return EXIT_ENSEMBLE
    except (OSError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _NUMERICAL_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> int:
    return dispatch(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
