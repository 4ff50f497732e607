"""Min-max interval normalization for inputs and outputs.

Product-unit hidden nodes raise inputs to real powers, so normalized
inputs must stay strictly positive; the default input interval
[0.1, 1.1] guarantees that for in-range data.  Outputs default to
[0.1, 0.9].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .errors import ValidationError
from .validation import as_float_matrix

DEFAULT_INPUT_INTERVAL = (0.1, 1.1)
DEFAULT_OUTPUT_INTERVAL = (0.1, 0.9)


@dataclass(frozen=True)
class AffineMap:
    """Per-column affine map ``native -> scale * native + offset``.

    ``interval`` records the target interval the map was fitted to, when
    there is a single one; calibrated maps with per-column targets store
    None.
    """

    scale: np.ndarray
    offset: np.ndarray
    interval: tuple[float, float] | None = None

    def __post_init__(self):
        scale = np.asarray(self.scale, dtype=float).reshape(-1).copy()
        offset = np.asarray(self.offset, dtype=float).reshape(-1).copy()
        if scale.shape != offset.shape:
            raise ValidationError("scale and offset must have the same length")
        if not (np.all(np.isfinite(scale)) and np.all(np.isfinite(offset))):
            raise ValidationError("affine map parameters must be finite")
        if not np.all(scale > 0):
            raise ValidationError("affine map scales must be strictly positive")
        scale.setflags(write=False)
        offset.setflags(write=False)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "offset", offset)

    @property
    def n_columns(self) -> int:
        return self.scale.shape[0]

    def forward(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        return values * self.scale + self.offset

    def inverse(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        return (values - self.offset) / self.scale

    def to_dict(self) -> dict:
        return {
            "scale": self.scale.tolist(),
            "offset": self.offset.tolist(),
            "interval": list(self.interval) if self.interval else None,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "AffineMap":
        interval = payload.get("interval")
        return cls(
            scale=np.asarray(payload["scale"], dtype=float),
            offset=np.asarray(payload["offset"], dtype=float),
            interval=tuple(interval) if interval else None,
        )


def fit_affine(values, interval: tuple[float, float], name: str = "values") -> AffineMap:
    """Fit per-column min-max maps sending [col_min, col_max] onto ``interval``.

    Constant columns map to the interval midpoint (scale 1, pure shift) so
    degenerate data still round-trips exactly.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValidationError(f"interval must satisfy lo < hi, got ({lo}, {hi})")
    arr = as_float_matrix(values, name=name)
    if arr.shape[0] == 0:
        raise ValidationError(f"cannot fit normalization on empty {name}")
    cmin = arr.min(axis=0)
    cmax = arr.max(axis=0)
    span = cmax - cmin
    constant = span == 0
    safe_span = np.where(constant, 1.0, span)
    scale = np.where(constant, 1.0, (hi - lo) / safe_span)
    offset = np.where(
        constant,
        0.5 * (lo + hi) - cmin,
        lo - cmin * scale,
    )
    return AffineMap(scale=scale, offset=offset, interval=(lo, hi))


def fit_affine_from_bounds(
    lo_values, hi_values, interval: tuple[float, float]
) -> AffineMap:
    """Fit maps from explicit per-column [lo, hi] bounds onto ``interval``."""
    bounds = np.vstack([np.asarray(lo_values, float), np.asarray(hi_values, float)])
    return fit_affine(bounds, interval, name="bounds")


@dataclass(frozen=True)
class NormalizationSpec:
    """Paired input/output affine maps attached to a trained model."""

    inputs: AffineMap
    outputs: AffineMap

    def normalize_inputs(self, X) -> np.ndarray:
        return self.inputs.forward(X)

    def denormalize_inputs(self, X) -> np.ndarray:
        return self.inputs.inverse(X)

    def normalize_outputs(self, Y) -> np.ndarray:
        return self.outputs.forward(Y)

    def denormalize_outputs(self, Y) -> np.ndarray:
        return self.outputs.inverse(Y)

    def to_dict(self) -> dict:
        return {"inputs": self.inputs.to_dict(), "outputs": self.outputs.to_dict()}

    @classmethod
    def from_dict(cls, payload: dict) -> "NormalizationSpec":
        return cls(
            inputs=AffineMap.from_dict(payload["inputs"]),
            outputs=AffineMap.from_dict(payload["outputs"]),
        )


def fit_normalizer(
    train,
    input_interval: tuple[float, float] = DEFAULT_INPUT_INTERVAL,
    output_interval: tuple[float, float] = DEFAULT_OUTPUT_INTERVAL,
) -> NormalizationSpec:
    """Fit input/output normalization on a training set.

    ``train`` may be a Dataset or an ``(X, Y)`` pair.  The input interval
    must start above zero so normalized training inputs are valid for
    product units.
    """
    X, Y = _as_xy(train)
    if X.shape[0] == 0:
        raise ValidationError("cannot fit a normalizer on an empty dataset")
    if not input_interval[0] > 0:
        raise ValidationError(
            "input interval must start above 0 for product-unit safety, "
            f"got lo={input_interval[0]}"
        )
    return NormalizationSpec(
        inputs=fit_affine(X, input_interval, name="inputs"),
        outputs=fit_affine(Y, output_interval, name="outputs"),
    )


def _as_xy(train) -> tuple[np.ndarray, np.ndarray]:
    """Accept a Dataset or an (X, Y) pair of arrays."""
    if hasattr(train, "X") and hasattr(train, "Y"):
        return train.X, train.Y
    X, Y = train
    X = as_float_matrix(X, name="X")
    Y = as_float_matrix(Y, name="Y")
    if X.shape[0] != Y.shape[0]:
        raise ValidationError(
            f"X and Y row counts differ: {X.shape[0]} vs {Y.shape[0]}"
        )
    return X, Y


class IntervalScaler(TransformerMixin, BaseEstimator):
    """sklearn-style transformer wrapping the per-column min-max map."""

    def __init__(self, interval: tuple[float, float] = DEFAULT_INPUT_INTERVAL):
        self.interval = interval

    def fit(self, X, y=None):
        self.map_ = fit_affine(X, self.interval, name="X")
        self.n_features_in_ = self.map_.n_columns
        return self

    def transform(self, X):
        self._check_fitted()
        X = as_float_matrix(X, name="X", n_cols=self.n_features_in_)
        return self.map_.forward(X)

    def inverse_transform(self, X):
        self._check_fitted()
        X = as_float_matrix(X, name="X", n_cols=self.n_features_in_)
        return self.map_.inverse(X)

    def _check_fitted(self):
        if not hasattr(self, "map_"):
            raise NotFittedError("IntervalScaler is not fitted yet")
