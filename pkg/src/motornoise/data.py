"""Pattern datasets: CSV loading, saving, and train/test splitting.

File format: UTF-8 CSV with a header row naming the 40 inputs (either
X1..X40 or their aliases, in schema order) followed by the 4 outputs.
Lines starting with ``#`` are provenance comments and are skipped.
"""

from __future__ import annotations

import csv
import logging
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, SchemaError, ValidationError
from .schema import DEFAULT_SCHEMA, WORKING_RANGES, FeatureSchema
from .validation import as_float_matrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of patterns with a fixed schema.

    ``X`` holds the native-unit inputs (n x 40) and ``Y`` the native-unit
    outputs (n x 4).  Arrays are read-only after construction.
    """

    X: np.ndarray
    Y: np.ndarray
    schema: FeatureSchema = DEFAULT_SCHEMA
    provenance: str | None = None

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float).copy()
        Y = np.asarray(self.Y, dtype=float).copy()
        if X.ndim != 2 or X.shape[1] != self.schema.n_inputs:
            raise ValidationError(
                f"X must be (n, {self.schema.n_inputs}), got {X.shape}"
            )
        if Y.ndim != 2 or Y.shape[1] != self.schema.n_outputs:
            raise ValidationError(
                f"Y must be (n, {self.schema.n_outputs}), got {Y.shape}"
            )
        if X.shape[0] != Y.shape[0]:
            raise ValidationError("X and Y must have the same number of rows")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise ValidationError("dataset contains non-finite values")
        X.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    def __len__(self) -> int:
        return self.X.shape[0]

    def take(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=int)
        return Dataset(self.X[idx], self.Y[idx], self.schema, self.provenance)


def _check_header(header: list[str], schema: FeatureSchema) -> None:
    expected = schema.header(aliases=True)
    canonical = schema.header(aliases=False)
    header = [h.strip() for h in header]
    accepted_per_pos = [{expected[i], canonical[i]} for i in range(len(expected))]
    if len(header) != len(expected) or any(
        header[i] not in accepted_per_pos[i] for i in range(min(len(header), len(expected)))
    ):
        accepted = set(expected) | set(canonical)
        given = set(header)
        missing = [
            expected[i]
            for i in range(len(expected))
            if not (given & accepted_per_pos[i])
        ]
        extra = [h for h in header if h not in accepted]
        if missing:
            raise SchemaError(f"missing column(s): {', '.join(missing)}")
        if extra:
            raise SchemaError(f"unexpected column(s): {', '.join(extra)}")
        for i, h in enumerate(header):
            if h not in accepted_per_pos[i]:
                raise SchemaError(
                    f"column {i + 1} is {h!r}, expected {expected[i]!r}"
                )
        raise SchemaError("header does not match the expected column layout")


def load_dataset(
    path,
    schema: FeatureSchema = DEFAULT_SCHEMA,
    range_check: str = "warn",
) -> Dataset:
    """Load a pattern CSV, validating the header against the schema.

    ``range_check`` controls what happens when an input falls outside the
    documented working ranges: "warn" (default), "error", or "off".
    """
    if range_check not in ("warn", "error", "off"):
        raise ValidationError(f"range_check must be warn/error/off, got {range_check!r}")
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")

    provenance = None
    header = None
    rows: list[list[float]] = []
    n_cols = schema.n_inputs + schema.n_outputs
    with open(path, newline="", encoding="utf-8") as fh:
        for line_no, record in enumerate(csv.reader(fh), start=1):
            if not record or (record[0].startswith("#")):
                if provenance is None and record and record[0].startswith("#"):
                    provenance = ",".join(record).lstrip("# ").strip()
                continue
            if header is None:
                _check_header(record, schema)
                header = record
                continue
            if len(record) != n_cols:
                raise SchemaError(
                    f"line {line_no}: expected {n_cols} cells, got {len(record)}"
                )
            parsed = []
            for col, cell in enumerate(record):
                name = schema.header()[col]
                try:
                    value = float(cell)
                except ValueError:
                    raise ParseError(
                        f"line {line_no}, column {name}: cannot parse {cell!r}"
                    ) from None
                if not math.isfinite(value):
                    raise ValidationError(
                        f"line {line_no}, column {name}: non-finite value {cell!r}"
                    )
                parsed.append(value)
            rows.append(parsed)
    if header is None:
        raise SchemaError(f"{path}: no header row found")

    data = np.asarray(rows, dtype=float).reshape(len(rows), n_cols)
    X = data[:, : schema.n_inputs]
    Y = data[:, schema.n_inputs:]
    if range_check != "off" and len(rows):
        problems = WORKING_RANGES.violations(X, schema)
        if problems:
            message = (
                f"{len(problems)} input value(s) outside working ranges "
                f"(first: {problems[0]})"
            )
            if range_check == "error":
                raise ValidationError(message)
            warnings.warn(message, stacklevel=2)
    log.info("loaded %d pattern(s) from %s", len(rows), path)
    return Dataset(X, Y, schema, provenance)


def save_dataset(data: Dataset, path, provenance: str | None = None) -> None:
    """Write a dataset in the canonical CSV layout with full float precision."""
    path = Path(path)
    header_note = provenance if provenance is not None else data.provenance
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if header_note:
            fh.write(f"# {header_note}\n")
        writer = csv.writer(fh)
        writer.writerow(data.schema.header(aliases=True))
        for xrow, yrow in zip(data.X, data.Y):
            writer.writerow([repr(float(v)) for v in xrow] + [repr(float(v)) for v in yrow])


def split(data: Dataset, train_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic shuffle-split into (train, test) partitions.

    The train size is round(n * fraction); each pattern lands in exactly
    one of the two subsets.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValidationError(
            f"train_fraction must be in (0, 1), got {train_fraction}"
        )
    n = len(data)
    n_train = int(math.floor(n * train_fraction + 0.5))
    perm = np.random.default_rng(seed).permutation(n)
    return data.take(perm[:n_train]), data.take(perm[n_train:])


def as_xy(train) -> tuple[np.ndarray, np.ndarray]:
    """Accept a Dataset or an (X, Y) array pair and return float matrices."""
    if isinstance(train, Dataset):
        return train.X, train.Y
    X, Y = train
    X = as_float_matrix(X, name="X")
    Y = as_float_matrix(Y, name="Y")
    if X.shape[0] != Y.shape[0]:
        raise ValidationError("X and Y row counts differ")
    return X, Y
