"""Small input-validation helpers shared by estimators and model code."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError


def as_float_matrix(
    values,
    name: str = "X",
    n_cols: int | None = None,
    require_finite: bool = True,
) -> np.ndarray:
    """Coerce to a 2-D float64 array, checking width and finiteness."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValidationError(f"{name} must be 2-D, got shape {arr.shape}")
    if n_cols is not None and arr.shape[1] != n_cols:
        raise ValidationError(
            f"{name} must have {n_cols} columns, got {arr.shape[1]}"
        )
    if require_finite and not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    return arr


def as_float_vector(
    values,
    name: str = "x",
    size: int | None = None,
    require_finite: bool = True,
) -> np.ndarray:
    """Coerce to a 1-D float64 array, checking length and finiteness."""
    arr = np.asarray(values, dtype=float).reshape(-1)
    if size is not None and arr.shape[0] != size:
        raise ValidationError(f"{name} must have length {size}, got {arr.shape[0]}")
    if require_finite and not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    return arr
