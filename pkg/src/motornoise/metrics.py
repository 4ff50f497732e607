"""Per-output and global error metrics for the four acoustic outputs.

Conventions: MSE is averaged over patterns per output; SEP is the RMSE
of an output divided by the absolute mean of its targets, in percent.
The "global" figure of either metric is the SUM over the four outputs
(dividing by 4 recovers the per-output average).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .schema import OUTPUT_NAMES
from .validation import as_float_matrix


def _check_pair(preds, targets) -> tuple[np.ndarray, np.ndarray]:
    P = as_float_matrix(preds, name="preds")
    T = as_float_matrix(targets, name="targets")
    if P.shape != T.shape:
        raise ValidationError(f"shape mismatch: preds {P.shape} vs targets {T.shape}")
    if P.shape[0] == 0:
        raise ValidationError("metrics require at least one pattern")
    return P, T


def mse(preds, targets) -> tuple[np.ndarray, float]:
    """Mean squared error per output plus the global (summed) value."""
    P, T = _check_pair(preds, targets)
    diff = T - P
    per_output = np.mean(diff * diff, axis=0)
    return per_output, float(per_output.sum())


def sep(preds, targets, ref_means) -> tuple[np.ndarray, float]:
    """Standard error of prediction (percent) per output plus the sum.

    ``ref_means`` are the target means of the set under evaluation
    (train means when scoring the train set, test means for the test set).
    """
    P, T = _check_pair(preds, targets)
    means = np.asarray(ref_means, dtype=float).reshape(-1)
    if means.shape[0] != P.shape[1]:
        raise ValidationError("ref_means length must match the output count")
    if np.any(means == 0):
        bad = int(np.argmin(np.abs(means)))
        raise ValidationError(f"reference mean for output {bad} is zero")
    diff = T - P
    rmse = np.sqrt(np.mean(diff * diff, axis=0))
    per_output = 100.0 / np.abs(means) * rmse
    return per_output, float(per_output.sum())


@dataclass(frozen=True)
class MetricReport:
    """MSE and SEP for one prediction set; globals are per-output sums."""

    per_output_mse: np.ndarray
    global_mse: float
    per_output_sep: np.ndarray
    global_sep: float
    n: int

    def __post_init__(self):
        pm = np.asarray(self.per_output_mse, dtype=float).reshape(-1).copy()
        ps = np.asarray(self.per_output_sep, dtype=float).reshape(-1).copy()
        if np.any(pm < 0) or np.any(ps < 0):
            raise ValidationError("metric values must be non-negative")
        if not np.isclose(self.global_mse, pm.sum(), rtol=1e-12, atol=0):
            raise ValidationError("global MSE must equal the per-output sum")
        if not np.isclose(self.global_sep, ps.sum(), rtol=1e-12, atol=0):
            raise ValidationError("global SEP must equal the per-output sum")
        pm.setflags(write=False)
        ps.setflags(write=False)
        object.__setattr__(self, "per_output_mse", pm)
        object.__setattr__(self, "per_output_sep", ps)


def compute_report(preds, targets, ref_means=None) -> MetricReport:
    """Build a MetricReport; means default to the targets' own means."""
    P, T = _check_pair(preds, targets)
    if ref_means is None:
        ref_means = T.mean(axis=0)
    per_mse, glob_mse = mse(P, T)
    per_sep, glob_sep = sep(P, T, ref_means)
    return MetricReport(per_mse, glob_mse, per_sep, glob_sep, n=P.shape[0])


@dataclass(frozen=True)
class EvalReport:
    """Metrics of one model on one dataset, plus its link count."""

    metrics: MetricReport
    links: int


def evaluate_model(model, data) -> EvalReport:
    """Score a network on a dataset (or (X, Y) pair) in native units."""
    from .data import as_xy
    from .network import count_links

    X, Y = as_xy(data)
    preds = model.predict(X)
    return EvalReport(
        metrics=compute_report(preds, Y, ref_means=Y.mean(axis=0)),
        links=count_links(model),
    )


def _fmt(value: float) -> str:
    return f"{value:.4g}"


def render_rows(
    rows: list[tuple[str, MetricReport, float | None]],
    output_names=OUTPUT_NAMES,
) -> str:
    """Tabulate labelled reports: MSE block, SEP block, then link counts.

    Each row is (label, report, links) with links possibly None.
    """
    width = 11
    names = ["Global", *output_names]
    header_one = (
        f"{'':10s}" + "MSE".ljust(width * len(names)) + "SEP".ljust(width * len(names))
    )
    header_two = f"{'':10s}" + "".join(f"{n:<{width}}" for n in names) * 2 + "#Links"
    lines = [header_one.rstrip(), header_two.rstrip()]
    for label, report, links in rows:
        cells = [
            _fmt(report.global_mse),
            *(_fmt(v) for v in report.per_output_mse),
            _fmt(report.global_sep),
            *(_fmt(v) for v in report.per_output_sep),
        ]
        line = f"{label:10s}" + "".join(f"{c:<{width}}" for c in cells)
        if links is not None:
            line += _fmt(links) if isinstance(links, float) else str(links)
        lines.append(line.rstrip())
    return "\n".join(lines) + "\n"


def render_report(report: MetricReport, links: int | None = None, label: str = "Model") -> str:
    return render_rows([(label, report, links)])
