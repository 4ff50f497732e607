"""Multitask feed-forward networks with product-unit or sigmoid-unit
hidden layers.

A model is one hidden layer of m basis nodes feeding 4 linear outputs:

    f_k(x) = b_k + sum_j c_kj * B_j(x),   k = 1..4

Product units compute B_j(x) = prod_i x_i^w_ji (evaluated as
exp(sum w ln x), which requires strictly positive inputs); sigmoid units
compute B_j(x) = 1 / (1 + exp(-(w_j0 + sum_i w_ji x_i))).  Connections
are sparse: an absent weight means "no link".
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError, NumericError, SerializationError, ValidationError
from .normalize import NormalizationSpec
from .validation import as_float_matrix, as_float_vector

N_OUTPUTS = 4
MODEL_FORMAT = "punn-model/1"

#: Sentinel for "use the package default normalization calibration".
_DEFAULT_NORMALIZATION = object()


class BasisKind(enum.Enum):
    PRODUCT = "product"
    SIGMOID = "sigmoid"


def parse_basis(name) -> BasisKind:
    """Accept 'product'/'sigmoid' plus the common 'punn'/'sunn' shorthands."""
    if isinstance(name, BasisKind):
        return name
    key = str(name).strip().lower()
    aliases = {
        "product": BasisKind.PRODUCT,
        "punn": BasisKind.PRODUCT,
        "sigmoid": BasisKind.SIGMOID,
        "sunn": BasisKind.SIGMOID,
    }
    if key not in aliases:
        raise ValidationError(f"unknown basis kind {name!r}")
    return aliases[key]


@dataclass(frozen=True)
class HiddenNode:
    """One hidden basis node: sparse input weights plus an optional bias.

    Weights map 0-based input indices to nonzero reals.  Sigmoid nodes
    carry a bias; product nodes must not.
    """

    weights: dict[int, float]
    bias: float | None = None

    def __post_init__(self):
        if not self.weights:
            raise ValidationError("hidden node must have at least one input weight")
        canonical: dict[int, float] = {}
        for idx in sorted(self.weights):
            w = float(self.weights[idx])
            if not np.isfinite(w):
                raise ValidationError(f"weight for input {idx} is not finite")
            if w == 0.0:
                raise ValidationError(
                    f"weight for input {idx} is exactly 0; drop the connection instead"
                )
            canonical[int(idx)] = w
        object.__setattr__(self, "weights", canonical)
        if self.bias is not None:
            b = float(self.bias)
            if not np.isfinite(b):
                raise ValidationError("node bias is not finite")
            object.__setattr__(self, "bias", b)

    @cached_property
    def indices(self) -> np.ndarray:
        arr = np.fromiter(self.weights.keys(), dtype=np.intp, count=len(self.weights))
        arr.setflags(write=False)
        return arr

    @cached_property
    def values(self) -> np.ndarray:
        arr = np.fromiter(self.weights.values(), dtype=float, count=len(self.weights))
        arr.setflags(write=False)
        return arr

    @property
    def n_connections(self) -> int:
        return len(self.weights)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def basis_matrix(
    nodes,
    basis: BasisKind,
    X: np.ndarray,
    ln_inputs: np.ndarray | None = None,
) -> np.ndarray:
    """Evaluate every node on normalized inputs X (n x d) -> (n x m).

    For product units a precomputed ``ln_inputs`` matrix may be supplied
    to avoid repeated logs in training loops.  No domain checks are done
    here; callers validate positivity first.
    """
    n = X.shape[0]
    B = np.empty((n, len(nodes)))
    for j, node in enumerate(nodes):
        idx, w = node.indices, node.values
        if basis is BasisKind.PRODUCT:
            lx = ln_inputs[:, idx] if ln_inputs is not None else np.log(X[:, idx])
            B[:, j] = np.exp(lx @ w)
        else:
            B[:, j] = _sigmoid(node.bias + X[:, idx] @ w)
    return B


def eval_basis(node: HiddenNode, basis: BasisKind, x, node_index: int = 0) -> float:
    """Evaluate a single node on one normalized input vector."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValidationError("input vector contains non-finite values")
    idx, w = node.indices, node.values
    if basis is BasisKind.PRODUCT:
        connected = x[idx]
        if np.any(connected <= 0):
            bad = int(idx[np.argmin(connected)])
            raise DomainError(
                f"input X{bad + 1} = {x[bad]:g} must be > 0 to feed a product unit"
            )
        value = float(np.exp(np.log(connected) @ w))
    else:
        if node.bias is None:
            raise ValidationError("sigmoid node is missing its bias")
        value = float(_sigmoid(np.array(node.bias + x[idx] @ w)))
    if not np.isfinite(value):
        raise NumericError(f"hidden node {node_index} produced a non-finite value")
    return value


@dataclass(frozen=True)
class NetworkModel:
    """Immutable network: basis kind, hidden nodes, linear output layer.

    ``output_coeffs`` is (4 x m); an exactly-zero coefficient means "no
    link".  ``output_bias`` (length 4) is always present.  ``normalization``
    maps native units to the model's working space and back; models
    without one can only be evaluated in normalized space.
    """

    basis: BasisKind
    hidden: tuple[HiddenNode, ...]
    output_coeffs: np.ndarray
    output_bias: np.ndarray
    n_inputs: int = 40
    normalization: NormalizationSpec | None = None

    def __post_init__(self):
        if not isinstance(self.basis, BasisKind):
            object.__setattr__(self, "basis", parse_basis(self.basis))
        hidden = tuple(self.hidden)
        if len(hidden) < 1:
            raise ValidationError("model must have at least one hidden node")
        for node in hidden:
            if max(node.weights) >= self.n_inputs:
                raise ValidationError(
                    f"node references input {max(node.weights)} "
                    f">= n_inputs={self.n_inputs}"
                )
            if self.basis is BasisKind.PRODUCT and node.bias is not None:
                raise ValidationError("product-unit nodes must not carry a bias")
            if self.basis is BasisKind.SIGMOID and node.bias is None:
                raise ValidationError("sigmoid nodes require a bias")
        coeffs = np.asarray(self.output_coeffs, dtype=float).copy()
        bias = np.asarray(self.output_bias, dtype=float).reshape(-1).copy()
        if coeffs.shape != (N_OUTPUTS, len(hidden)):
            raise ValidationError(
                f"output_coeffs must be ({N_OUTPUTS}, {len(hidden)}), got {coeffs.shape}"
            )
        if bias.shape != (N_OUTPUTS,):
            raise ValidationError(f"output_bias must have length {N_OUTPUTS}")
        if not (np.all(np.isfinite(coeffs)) and np.all(np.isfinite(bias))):
            raise ValidationError("output layer parameters must be finite")
        coeffs.setflags(write=False)
        bias.setflags(write=False)
        object.__setattr__(self, "hidden", hidden)
        object.__setattr__(self, "output_coeffs", coeffs)
        object.__setattr__(self, "output_bias", bias)

    @property
    def n_nodes(self) -> int:
        return len(self.hidden)

    def connected_inputs(self) -> list[int]:
        """Sorted indices of inputs used by at least one hidden node."""
        used: set[int] = set()
        for node in self.hidden:
            used.update(node.weights)
        return sorted(used)

    def predict_normalized(self, X) -> np.ndarray:
        """Evaluate in normalized space: normalized inputs -> normalized outputs."""
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        X2 = as_float_matrix(X, name="X", n_cols=self.n_inputs)
        if self.basis is BasisKind.PRODUCT:
            self._check_positive(X2)
        B = basis_matrix(self.hidden, self.basis, X2)
        F = self.output_bias + B @ self.output_coeffs.T
        if not np.all(np.isfinite(F)):
            bad = int(np.argwhere(~np.isfinite(B).all(axis=0)).reshape(-1)[0]) if not np.all(np.isfinite(B)) else -1
            raise NumericError(
                f"model evaluation overflowed (hidden node {bad})"
                if bad >= 0
                else "model evaluation produced non-finite outputs"
            )
        return F[0] if single else F

    def predict(self, X) -> np.ndarray:
        """Native-unit prediction: normalizes, evaluates, denormalizes."""
        if self.normalization is None:
            raise ValidationError(
                "model has no normalization attached; use predict_normalized"
            )
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        X2 = as_float_matrix(X, name="X", n_cols=self.n_inputs)
        Xstar = self.normalization.normalize_inputs(X2)
        F = self.predict_normalized(Xstar)
        Y = self.normalization.denormalize_outputs(F)
        return Y[0] if single else Y

    def _check_positive(self, Xstar: np.ndarray) -> None:
        used = self.connected_inputs()
        sub = Xstar[:, used]
        if np.any(sub <= 0):
            rows, cols = np.nonzero(sub <= 0)
            var = used[cols[0]]
            raise DomainError(
                f"normalized input X{var + 1} = {sub[rows[0], cols[0]]:g} "
                f"(row {rows[0]}) must be > 0 to feed a product unit"
            )


def count_links(model: NetworkModel) -> int:
    """Number of links: input weights + hidden biases + nonzero output
    coefficients + the 4 output biases."""
    n_in = sum(node.n_connections for node in model.hidden)
    n_bias = sum(1 for node in model.hidden if node.bias is not None)
    n_out = int(np.count_nonzero(model.output_coeffs))
    return n_in + n_bias + n_out + N_OUTPUTS


# Built-in reference model: a single product unit over 10 of the 40
# inputs, used as the package's synthetic ground truth and in the
# analysis examples.  Keys are 0-based input indices.
_REFERENCE_EXPONENTS: dict[int, float] = {
    2: -3.532,   # p
    3: 0.016,    # M
    4: -1.415,   # V50
    5: -0.044,   # V250
    14: 0.209,   # V1550
    18: -0.016,  # V2150
    19: 0.077,   # V2350
    23: -0.145,  # I200
    25: 0.628,   # I350
    38: 0.088,   # I2350
}
_REFERENCE_OUTPUT_COEFFS = ((1.046,), (0.449,), (0.022,), (0.131,))
_REFERENCE_OUTPUT_BIAS = (0.192, 0.318, 0.234, 0.330)


def reference_punn(normalization=_DEFAULT_NORMALIZATION) -> NetworkModel:
    """The built-in single-node product-unit reference model.

    By default it is returned with the package's standard normalization
    (inputs mapped from the documented working ranges, outputs calibrated
    on the synthetic design dataset).  Pass an explicit NormalizationSpec
    to override, or None for a bare normalized-space model.
    """
    if normalization is _DEFAULT_NORMALIZATION:
        from .synth import default_normalization

        normalization = default_normalization()
    return NetworkModel(
        basis=BasisKind.PRODUCT,
        hidden=(HiddenNode(weights=dict(_REFERENCE_EXPONENTS)),),
        output_coeffs=np.array(_REFERENCE_OUTPUT_COEFFS),
        output_bias=np.array(_REFERENCE_OUTPUT_BIAS),
        n_inputs=40,
        normalization=normalization,
    )


def serialize(model: NetworkModel) -> str:
    """Render a model as versioned, deterministic, round-trip-exact JSON."""
    payload = {
        "format": MODEL_FORMAT,
        "basis": model.basis.value,
        "n_inputs": model.n_inputs,
        "hidden": [
            {
                "weights": {f"X{i + 1}": w for i, w in node.weights.items()},
                "bias": node.bias,
            }
            for node in model.hidden
        ],
        "output_coeffs": model.output_coeffs.tolist(),
        "output_bias": model.output_bias.tolist(),
        "normalization": model.normalization.to_dict() if model.normalization else None,
    }
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _reject_constant(value):
    raise SerializationError(f"non-finite constant {value!r} in model file")


def deserialize(text: str) -> NetworkModel:
    """Parse a model produced by :func:`serialize`."""
    try:
        payload = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"malformed model file: {exc}") from None
    if not isinstance(payload, dict):
        raise SerializationError("model file must contain a JSON object")
    version = payload.get("format")
    if version != MODEL_FORMAT:
        raise SerializationError(
            f"unknown model format {version!r} (expected {MODEL_FORMAT!r})"
        )
    try:
        nodes = []
        for entry in payload["hidden"]:
            weights = {
                int(str(name).lstrip("X")) - 1: float(w)
                for name, w in entry["weights"].items()
            }
            bias = entry.get("bias")
            nodes.append(HiddenNode(weights=weights, bias=bias))
        norm = payload.get("normalization")
        model = NetworkModel(
            basis=parse_basis(payload["basis"]),
            hidden=tuple(nodes),
            output_coeffs=np.asarray(payload["output_coeffs"], dtype=float),
            output_bias=np.asarray(payload["output_bias"], dtype=float),
            n_inputs=int(payload["n_inputs"]),
            normalization=NormalizationSpec.from_dict(norm) if norm else None,
        )
    except (KeyError, TypeError, ValueError, ValidationError) as exc:
        raise SerializationError(f"invalid model file: {exc}") from None
    return model


def save_model(model: NetworkModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(model))


def load_model(path) -> NetworkModel:
    with open(path, encoding="utf-8") as fh:
        return deserialize(fh.read())
