"""Trained-model interpretation: input influence slopes, two-variable
response surfaces, and surface extremes."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DomainError, ValidationError
from .network import BasisKind, NetworkModel, basis_matrix
from .schema import DEFAULT_SCHEMA, WORKING_RANGES, FeatureSchema
from .validation import as_float_matrix, as_float_vector


@dataclass(frozen=True)
class InfluenceReport:
    """Analytic output/input slopes at one normalized point.

    ``slopes`` is (4 x d); ``signs`` holds +1/-1/0 per entry, with exact
    zeros for unconnected inputs.
    """

    slopes: np.ndarray
    signs: np.ndarray
    nominal: np.ndarray


def influence(model: NetworkModel, nominal) -> InfluenceReport:
    """Partial derivatives of the normalized outputs at a normalized point.

    For a product node, d B / d x_i = w_i * B / x_i on connected inputs;
    for a sigmoid node, d B / d x_i = w_i * B * (1 - B).  Unconnected
    inputs get an exact zero.
    """
    x = as_float_vector(nominal, name="nominal", size=model.n_inputs)
    B = model.predict_normalized(x.reshape(1, -1))  # validates domain
    basis = basis_matrix(model.hidden, model.basis, x.reshape(1, -1))[0]
    grad = np.zeros((model.n_nodes, model.n_inputs))
    for j, node in enumerate(model.hidden):
        idx, w = node.indices, node.values
        if model.basis is BasisKind.PRODUCT:
            grad[j, idx] = w * basis[j] / x[idx]
        else:
            grad[j, idx] = w * basis[j] * (1.0 - basis[j])
    slopes = model.output_coeffs @ grad
    del B
    return InfluenceReport(slopes=slopes, signs=np.sign(slopes).astype(np.int8), nominal=x)


def fixed_point(data, policy="means") -> np.ndarray:
    """Native-unit values at which unswept variables are held.

    ``policy`` is "means" (default), "medians", or an explicit 40-vector.
    ``data`` may be a Dataset or a feature matrix.
    """
    if not isinstance(policy, str):
        return as_float_vector(policy, name="fixed point")
    X = data.X if isinstance(data, Dataset) else as_float_matrix(data, name="X")
    if policy == "means":
        return X.mean(axis=0)
    if policy == "medians":
        return np.median(X, axis=0)
    raise ValidationError(f"unknown fixed-point policy {policy!r}")


@dataclass(frozen=True)
class Surface:
    """Predictions over a two-variable native-unit sweep.

    ``outputs[k][i, j]`` is output k at (a_values[i], b_values[j]); the
    remaining variables are held at ``fixed``.
    """

    var_a: str
    var_b: str
    a_values: np.ndarray
    b_values: np.ndarray
    outputs: np.ndarray  # (4, len(a_values), len(b_values))
    fixed: np.ndarray
    output_names: tuple[str, ...]


def _check_sweep(values: np.ndarray, index: int, schema: FeatureSchema) -> None:
    lo, hi = WORKING_RANGES.lo[index], WORKING_RANGES.hi[index]
    if values.min() < lo or values.max() > hi:
        raise ValidationError(
            f"sweep of {schema.input_aliases[index]} exceeds its working range "
            f"[{lo:g}, {hi:g}]"
        )


def surface(
    model: NetworkModel,
    var_a,
    var_b,
    a_values=None,
    b_values=None,
    fixed=None,
    n_grid: int = 50,
    schema: FeatureSchema = DEFAULT_SCHEMA,
) -> Surface:
    """Sweep two input variables over native grids with the rest fixed.

    Grid values default to ``n_grid`` evenly spaced points across each
    variable's working range; ``fixed`` defaults to the midpoint of the
    working ranges and is usually supplied via :func:`fixed_point`.
    """
    ia = schema.resolve(var_a)
    ib = schema.resolve(var_b)
    if ia == ib:
        raise ValidationError("surface variables must differ")
    if a_values is None:
        a_values = np.linspace(WORKING_RANGES.lo[ia], WORKING_RANGES.hi[ia], n_grid)
    if b_values is None:
        b_values = np.linspace(WORKING_RANGES.lo[ib], WORKING_RANGES.hi[ib], n_grid)
    a_values = as_float_vector(a_values, name="a_values")
    b_values = as_float_vector(b_values, name="b_values")
    _check_sweep(a_values, ia, schema)
    _check_sweep(b_values, ib, schema)
    if fixed is None:
        fixed = 0.5 * (WORKING_RANGES.lo + WORKING_RANGES.hi)
    fixed = as_float_vector(fixed, name="fixed", size=model.n_inputs)

    na, nb = len(a_values), len(b_values)
    grid = np.tile(fixed, (na * nb, 1))
    grid[:, ia] = np.repeat(a_values, nb)
    grid[:, ib] = np.tile(b_values, na)
    preds = model.predict(grid)  # (na*nb, 4)
    outputs = preds.reshape(na, nb, 4).transpose(2, 0, 1)
    return Surface(
        var_a=schema.input_aliases[ia],
        var_b=schema.input_aliases[ib],
        a_values=a_values,
        b_values=b_values,
        outputs=outputs,
        fixed=fixed,
        output_names=tuple(schema.output_names),
    )


@dataclass(frozen=True)
class SurfaceExtremes:
    """Per-output (min, max - min, max) over a surface."""

    minima: np.ndarray
    spans: np.ndarray
    maxima: np.ndarray

    def __post_init__(self):
        if np.any(self.minima > self.maxima):
            raise ValidationError("surface minima exceed maxima")
        if not np.allclose(self.spans, self.maxima - self.minima, rtol=0, atol=0):
            raise ValidationError("spans must equal maxima - minima exactly")


def extremes(s: Surface) -> SurfaceExtremes:
    flat = s.outputs.reshape(s.outputs.shape[0], -1)
    minima = flat.min(axis=1)
    maxima = flat.max(axis=1)
    return SurfaceExtremes(minima=minima, spans=maxima - minima, maxima=maxima)


def argmax_cells(s: Surface) -> list[tuple[int, int]]:
    """Grid coordinates of each output's maximum cell."""
    return [
        tuple(np.unravel_index(int(np.argmax(grid)), grid.shape))
        for grid in s.outputs
    ]


def export_surface(s: Surface) -> str:
    """Render a surface as CSV, one row per grid cell in row-major order."""
    buf = io.StringIO()
    buf.write(f"{s.var_a},{s.var_b}," + ",".join(s.output_names) + "\n")
    for i, a in enumerate(s.a_values):
        for j, b in enumerate(s.b_values):
            cells = [repr(float(a)), repr(float(b))] + [
                repr(float(s.outputs[k, i, j])) for k in range(s.outputs.shape[0])
            ]
            buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def export_influence(report: InfluenceReport, schema: FeatureSchema = DEFAULT_SCHEMA) -> str:
    """Render influence slopes and signs as CSV blocks (outputs x inputs)."""
    buf = io.StringIO()
    buf.write("output," + ",".join(schema.input_aliases) + "\n")
    for k, name in enumerate(schema.output_names):
        buf.write(name + "," + ",".join(repr(float(v)) for v in report.slopes[k]) + "\n")
    buf.write("# signs\n")
    marks = {1: "+", -1: "-", 0: "0"}
    for k, name in enumerate(schema.output_names):
        buf.write(name + "," + ",".join(marks[int(v)] for v in report.signs[k]) + "\n")
    return buf.getvalue()
