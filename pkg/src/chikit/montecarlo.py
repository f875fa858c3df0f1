"""Random sparse Kraus ensembles and distinct-entry histograms.

Two related ensembles live here.

:func:`random_sparse_kraus_set` draws trace-preserving sets: each of the
r operators receives ``nnz`` uniformly chosen cells (without replacement)
filled with independent complex Gaussians; a draw is accepted when
S = sum K_n^dag K_n is diagonal within ``tol`` with every diagonal entry
above ``tol``, and each operator is then rescaled by the diagonal
S^(-1/2), which preserves the sparsity pattern and makes the set exactly
trace-preserving.  Two regimes can never be accepted and raise
:class:`EnsembleExhaustedError` immediately: nnz > dim (some operator
always has two entries in one row, so S is never diagonal) and
rank * nnz < dim (the entries cannot occupy every column, so S always has
a zero diagonal entry).

:func:`run_histogram` measures the distinct-|entry| statistic of process
matrices built from raw equal-magnitude draws: the same uniform positions,
values uniform over the fourth roots of unity {1, i, -1, -i}, accepted
when S is diagonal within ``tol`` (equivalently, no operator carries two
entries in one row).  No trace-preserving rescale is applied before
counting.  The statistic is invariant under global scaling but not under
the per-column rescale: unequal column multiplicities would inject
normalization weights like 1/sqrt(2) into the entry magnitudes and the
count would measure those artifacts instead of the sparsity structure.
With unit entries every process-matrix entry is a finite sum of fourth
roots of unity, so distinct counting at the default tolerance is exact,
and feasibility does not require rank * nnz >= dim.

Each realization draws from its own counter-derived random substream, so
a histogram run is bit-reproducible for a fixed seed at any worker count.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .analysis import distinct_abs_entries
from .bases import BasisKind, OperatorBasis, basis_for
from .channels import ChiConvention, KrausSet, chi_from_kraus
from .errors import DomainError, EnsembleExhaustedError, FormatError, SchemaError
from .linalg import DEFAULT_TOL

#: Candidate draws evaluated per vectorized rejection round.  Part of the
#: reproducibility contract: changing it changes which variates a draw sees.
CANDIDATE_BATCH = 128

DEFAULT_MAX_REJECTIONS = 200_000

_FOURTH_ROOTS = np.array([1.0, 1.0j, -1.0, -1.0j])


class ExportFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


@dataclass(frozen=True)
class SimulationConfig:
    """Full description of one histogram experiment."""

    dim: int
    rank: int
    nnz_per_kraus: int
    realizations: int = 10_000
    seed: int = 0
    tol: float = DEFAULT_TOL
    basis_kind: BasisKind = BasisKind.PAULI_TENSOR
    convention: ChiConvention = ChiConvention.TRACE_COEFFICIENT
    include_zero: bool = False
    max_rejections_per_draw: int = DEFAULT_MAX_REJECTIONS

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"dim must be >= 1, got {self.dim}")
        if self.rank < 1:
            raise DomainError(f"rank must be >= 1, got {self.rank}")
        if not 1 <= self.nnz_per_kraus <= self.dim**2:
            raise DomainError(
                f"nnz_per_kraus must lie in [1, dim^2] = [1, {self.dim**2}], "
                f"got {self.nnz_per_kraus}"
            )
        if self.realizations < 1:
            raise DomainError(f"realizations must be >= 1, got {self.realizations}")
        if self.seed < 0:
            raise DomainError(f"seed must be a nonnegative integer, got {self.seed}")
        if self.tol <= 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_rejections_per_draw < 1:
            raise DomainError("max_rejections_per_draw must be >= 1")
        if self.basis_kind == BasisKind.PAULI_TENSOR and (
            self.dim < 2 or self.dim & (self.dim - 1)
        ):
            raise DomainError(
                f"Pauli tensor basis needs dim = 2**n_qubits, got dim={self.dim}"
            )

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "rank": self.rank,
            "nnz_per_kraus": self.nnz_per_kraus,
            "realizations": self.realizations,
            "seed": self.seed,
            "tol": self.tol,
            "basis_kind": self.basis_kind.value,
            "convention": self.convention.value,
            "include_zero": self.include_zero,
            "max_rejections_per_draw": self.max_rejections_per_draw,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimulationConfig":
        try:
            return cls(
                dim=int(data["dim"]),
                rank=int(data["rank"]),
                nnz_per_kraus=int(data["nnz_per_kraus"]),
                realizations=int(data["realizations"]),
                seed=int(data["seed"]),
                tol=float(data["tol"]),
                basis_kind=BasisKind(data["basis_kind"]),
                convention=ChiConvention(data["convention"]),
                include_zero=bool(data["include_zero"]),
                max_rejections_per_draw=int(data["max_rejections_per_draw"]),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise SchemaError(f"malformed simulation config: {exc}") from exc


@dataclass(eq=False)
class HistogramResult:
    """Binned distinct-entry counts plus full run provenance."""

    bins: dict[int, int]
    realizations_completed: int
    acceptance_rate: float
    mode: int
    config: SimulationConfig
    bound: int

    def fraction_at_or_below(self, threshold: int) -> float:
        """Share of realizations whose distinct count is <= threshold."""
        total = sum(self.bins.values())
        hits = sum(v for k, v in self.bins.items() if k <= threshold)
        return hits / total if total else 0.0


def _substream(seed: int, index: int) -> np.random.Generator:
    """Independent, scheduling-invariant stream for one realization."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss))


def _batch_structure(pos, values, d, tol):
    """Evaluate S = sum K^dag K structure for a batch of candidate draws.

    Returns (off_ok, diag_ok, col_sums): whether the off-diagonal part of S
    is within ``tol``, whether every diagonal entry exceeds ``tol``, and the
    per-candidate column weights diag(S).  Off-diagonal entries stem solely
    from pairs of entries sharing a row inside one operator, so they are
    accumulated directly from those pairs; for collision-free candidates
    they are exactly zero, matching a dense evaluation of S bit for bit.
    """
    count, r, nnz = pos.shape
    rows = pos // d
    cols = pos % d
    weights = values.real**2 + values.imag**2

    cand = np.repeat(np.arange(count), r * nnz)
    col_sums = np.bincount(
        cand * d + cols.reshape(-1), weights=weights.reshape(-1), minlength=count * d
    ).reshape(count, d)
    diag_ok = (col_sums > tol).all(axis=1)

    pair = rows[..., :, None] == rows[..., None, :]
    pair &= ~np.eye(nnz, dtype=bool)
    if pair.any():
        prod = values[..., :, None].conj() * values[..., None, :]
        cell = (
            np.arange(count)[:, None, None, None] * d + cols[..., :, None]
        ) * d + cols[..., None, :]
        idx = cell[pair]
        re = np.bincount(idx, weights=prod.real[pair], minlength=count * d * d)
        im = np.bincount(idx, weights=prod.imag[pair], minlength=count * d * d)
        off_max = np.sqrt(re**2 + im**2).reshape(count, -1).max(axis=1)
    else:
        off_max = np.zeros(count)
    return off_max <= tol, diag_ok, col_sums


def _assemble(pos, values, d):
    """Build dense operators from one candidate's positions and values."""
    operators = []
    for n in range(pos.shape[0]):
        k = np.zeros(d * d, dtype=complex)
        k[pos[n]] = values[n]
        operators.append(k.reshape(d, d))
    return operators


def _rejection_loop(d, r, nnz, rng, tol, max_rejections, draw_values, full_gate):
    """Shared batched rejection sampler; returns (pos, values, col_sums, attempts)."""
    attempts = 0
    while attempts < max_rejections:
        batch = min(CANDIDATE_BATCH, max_rejections - attempts)
        order = rng.random((batch, r, d * d)).argsort(axis=-1)
        pos = order[..., :nnz]
        values = draw_values(rng, (batch, r, nnz))
        off_ok, diag_ok, col_sums = _batch_structure(pos, values, d, tol)
        accept = off_ok & diag_ok if full_gate else off_ok
        hits = np.flatnonzero(accept)
        if hits.size:
            i = int(hits[0])
            return pos[i], values[i], col_sums[i], attempts + i + 1
        attempts += batch
    raise EnsembleExhaustedError(
        f"no accepted draw for (dim={d}, rank={r}, nnz={nnz}) within "
        f"{max_rejections} candidates",
        attempts=attempts,
    )


def _check_draw_params(d, r, nnz):
    if d < 1 or r < 1:
        raise DomainError(f"dim and rank must be >= 1, got dim={d}, rank={r}")
    if not 1 <= nnz <= d * d:
        raise DomainError(f"nnz must lie in [1, {d * d}], got {nnz}")
    if nnz > d:
        raise EnsembleExhaustedError(
            f"nnz={nnz} > dim={d}: some operator always carries two entries in "
            "one row, so sum K^dag K is never diagonal",
            attempts=0,
        )


def _gaussian_values(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _fourth_root_values(rng, shape):
    return _FOURTH_ROOTS[rng.integers(0, 4, shape)]


def _sparse_tp_kraus(d, r, nnz, rng, tol, max_rejections):
    """Trace-preserving draw per the full gate; returns (operators, attempts)."""
    _check_draw_params(d, r, nnz)
    if r * nnz < d:
        raise EnsembleExhaustedError(
            f"rank*nnz = {r * nnz} < dim = {d}: the nonzero entries cannot "
            "occupy every column, so sum K^dag K always has a zero diagonal "
            "entry and trace preservation is unreachable",
            attempts=0,
        )
    pos, values, col_sums, attempts = _rejection_loop(
        d, r, nnz, rng, tol, max_rejections, _gaussian_values, full_gate=True
    )
    scaled = values * (1.0 / np.sqrt(col_sums))[pos % d]
    return _assemble(pos, scaled, d), attempts


def _raw_unit_kraus(d, r, nnz, rng, tol, max_rejections):
    """Equal-magnitude draw for the histogram statistic; no rescale."""
    _check_draw_params(d, r, nnz)
    pos, values, _, attempts = _rejection_loop(
        d, r, nnz, rng, tol, max_rejections, _fourth_root_values, full_gate=False
    )
    return _assemble(pos, values, d), attempts


def random_sparse_kraus_set(
    d: int,
    r: int,
    nnz: int,
    rng: np.random.Generator,
    tol: float = DEFAULT_TOL,
    max_rejections: int = DEFAULT_MAX_REJECTIONS,
) -> KrausSet:
    """Draw a trace-preserving set of r operators with exactly nnz nonzeros each."""
    operators, _ = _sparse_tp_kraus(d, r, nnz, rng, tol, max_rejections)
    return KrausSet(dim=d, operators=operators)


def _run_range(cfg: SimulationConfig, start: int, stop: int, basis: OperatorBasis):
    bins: Counter[int] = Counter()
    attempts_total = 0
    for index in range(start, stop):
        rng = _substream(cfg.seed, index)
        try:
            operators, attempts = _raw_unit_kraus(
                cfg.dim,
                cfg.rank,
                cfg.nnz_per_kraus,
                rng,
                cfg.tol,
                cfg.max_rejections_per_draw,
            )
        except EnsembleExhaustedError as exc:
            exc.realization = index
            raise
        attempts_total += attempts
        ks = KrausSet(dim=cfg.dim, operators=operators)
        chi = chi_from_kraus(ks, basis, cfg.convention)
        count, _ = distinct_abs_entries(chi.matrix, cfg.tol, cfg.include_zero)
        bins[count] += 1
    return bins, attempts_total


def _run_range_task(args):
    cfg, start, stop = args
    basis = basis_for(cfg.basis_kind, cfg.dim)
    return _run_range(cfg, start, stop, basis)


def run_histogram(cfg: SimulationConfig, workers: int = 1) -> HistogramResult:
    """Run the distinct-entry experiment over all realizations.

    ``workers > 1`` distributes realizations over processes; results are
    identical at every worker count because each realization owns its own
    substream and bin merging is order-insensitive integer addition.
    """
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    if workers == 1:
        basis = basis_for(cfg.basis_kind, cfg.dim)
        bins, attempts = _run_range(cfg, 0, cfg.realizations, basis)
    else:
        edges = np.linspace(0, cfg.realizations, workers + 1, dtype=int)
        chunks = [
            (cfg, int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if a < b
        ]
        bins = Counter()
        attempts = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk_bins, chunk_attempts in pool.map(_run_range_task, chunks):
                bins.update(chunk_bins)
                attempts += chunk_attempts
    max_freq = max(bins.values())
    mode = min(k for k, v in bins.items() if v == max_freq)
    return HistogramResult(
        bins=dict(sorted(bins.items())),
        realizations_completed=cfg.realizations,
        acceptance_rate=cfg.realizations / attempts,
        mode=mode,
        config=cfg,
        bound=cfg.rank**2,
    )


def _render_csv(result: HistogramResult) -> bytes:
    lines = ["distinct_count,frequency"]
    lines += [f"{k},{v}" for k, v in sorted(result.bins.items())]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _render_json(result: HistogramResult) -> bytes:
    doc = {
        "schema": "chikit-histogram/1",
        "config": result.config.to_dict(),
        "bins": {str(k): int(v) for k, v in sorted(result.bins.items())},
        "realizations_completed": result.realizations_completed,
        "acceptance_rate": result.acceptance_rate,
        "mode": result.mode,
        "bound": result.bound,
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _render_svg(result: HistogramResult) -> bytes:
    """Deterministic bar chart with a vertical rule at the rank**2 bound."""
    width, height = 640, 420
    left, right, top, bottom = 60, 20, 30, 50
    plot_w, plot_h = width - left - right, height - top - bottom
    keys = sorted(result.bins)
    x_min = min(keys[0], 1)
    x_max = max(keys[-1], result.bound) + 1
    span = x_max - x_min + 1
    bar_w = plot_w / span
    y_max = max(result.bins.values())

    def x_at(k: float) -> float:
        return left + (k - x_min) * bar_w

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" '
        f'y2="{height - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" '
        f'stroke="black"/>',
    ]
    for k in keys:
        freq = result.bins[k]
        bar_h = plot_h * freq / y_max
        parts.append(
            f'<rect x="{x_at(k) + 0.1 * bar_w:.2f}" '
            f'y="{height - bottom - bar_h:.2f}" '
            f'width="{0.8 * bar_w:.2f}" height="{bar_h:.2f}" fill="steelblue"/>'
        )
    label_step = max(1, span // 16)
    for k in range(x_min, x_max + 1, label_step):
        parts.append(
            f'<text x="{x_at(k) + 0.5 * bar_w:.2f}" y="{height - bottom + 16}" '
            f'font-size="11" text-anchor="middle">{k}</text>'
        )
    for frac in (0.0, 0.5, 1.0):
        y = height - bottom - plot_h * frac
        parts.append(
            f'<text x="{left - 6}" y="{y + 4:.2f}" font-size="11" '
            f'text-anchor="end">{int(round(y_max * frac))}</text>'
        )
    rule_x = x_at(result.bound) + 0.5 * bar_w
    parts.append(
        f'<line x1="{rule_x:.2f}" y1="{top}" x2="{rule_x:.2f}" '
        f'y2="{height - bottom}" stroke="crimson" stroke-dasharray="5,4"/>'
    )
    parts.append(
        f'<text x="{rule_x + 4:.2f}" y="{top + 12}" font-size="12" '
        f'fill="crimson">rank^2 = {result.bound}</text>'
    )
    parts.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 10}" font-size="12" '
        f'text-anchor="middle">distinct |entry| count</text>'
    )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def export_histogram(result: HistogramResult, fmt) -> bytes:
    """Serialize a completed histogram to CSV, JSON, or SVG bytes."""
    if result.realizations_completed < 1 or not result.bins:
        raise DomainError("refusing to export an empty histogram result")
    try:
        fmt = ExportFormat(fmt)
    except ValueError:
        raise FormatError(f"unsupported export format: {fmt!r}") from None
    if fmt == ExportFormat.CSV:
        return _render_csv(result)
    if fmt == ExportFormat.JSON:
        return _render_json(result)
    return _render_svg(result)


def histogram_from_json(raw) -> HistogramResult:
    """Rebuild a HistogramResult from :func:`export_histogram` JSON bytes."""
    if isinstance(raw, (bytes, bytearray)):
        raw = raw.decode("utf-8")
    if isinstance(raw, str):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid histogram JSON: {exc}") from exc
    if not isinstance(raw, dict) or raw.get("schema") != "chikit-histogram/1":
        raise SchemaError("not a chikit histogram document")
    try:
        return HistogramResult(
            bins={int(k): int(v) for k, v in raw["bins"].items()},
            realizations_completed=int(raw["realizations_completed"]),
            acceptance_rate=float(raw["acceptance_rate"]),
            mode=int(raw["mode"]),
            config=SimulationConfig.from_dict(raw["config"]),
            bound=int(raw["bound"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"malformed histogram document: {exc}") from exc
