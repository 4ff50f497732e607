"""Feature schema and native working ranges for motor acoustic data.

The measurement layout is fixed: 40 electrical inputs (distortion figures,
pole count, modulation index and the voltage/current harmonic spectrum)
and 4 acoustic outputs (equivalent sound pressure level, loudness,
roughness, sharpness).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

N_INPUTS = 40
N_OUTPUTS = 4

#: Semantic alias of each positional input X1..X40.
INPUT_ALIASES: tuple[str, ...] = (
    "Vthd", "Ithd", "p", "M",
    "V50", "V250", "V350", "V550", "V650", "V850", "V950", "V1150",
    "V1250", "V1450", "V1550", "V1750", "V1850", "V2050", "V2150",
    "V2350", "V2450",
    "I50", "I100", "I200", "I250", "I350", "I550", "I650", "I850",
    "I950", "I1150", "I1250", "I1450", "I1550", "I1750", "I1850",
    "I2050", "I2150", "I2350", "I2450",
)

INPUT_UNITS: tuple[str, ...] = ("%", "%", "poles", "index") + ("V",) * 17 + ("A",) * 19

OUTPUT_NAMES: tuple[str, ...] = ("LAEQ", "L", "R", "SA")
OUTPUT_UNITS: tuple[str, ...] = ("dB", "sone", "asper", "acum")

#: Native (min, max) working range of each input variable, in schema order.
_RANGE_TABLE: tuple[tuple[float, float], ...] = (
    (6.70, 229.60),    # Vthd (%)
    (1.80, 411.10),    # Ithd (%)
    (2.00, 12.00),     # p
    (5.00, 21.00),     # M
    (0.32, 244.60),    # V50
    (0.02, 121.40),    # V250
    (0.02, 95.20),     # V350
    (0.03, 87.60),     # V550
    (0.01, 99.10),     # V650
    (0.02, 96.50),     # V850
    (0.02, 92.70),     # V950
    (0.02, 82.90),     # V1150
    (0.06, 80.30),     # V1250
    (0.03, 86.30),     # V1450
    (0.03, 69.40),     # V1550
    (2.0e-3, 72.70),   # V1750
    (1.0e-3, 78.90),   # V1850
    (3.0e-3, 67.00),   # V2050
    (0.01, 65.10),     # V2150
    (0.01, 68.20),     # V2350
    (8.0e-3, 68.30),   # V2450
    (0.04, 0.38),      # I50
    (4.4e-5, 0.05),    # I100
    (4.4e-5, 0.02),    # I200
    (7.0e-5, 0.50),    # I250
    (1.2e-4, 0.30),    # I350
    (1.6e-4, 0.17),    # I550
    (5.1e-5, 0.17),    # I650
    (5.3e-5, 0.12),    # I850
    (4.3e-5, 0.11),    # I950
    (4.6e-5, 0.07),    # I1150
    (2.1e-5, 0.07),    # I1250
    (4.0e-5, 0.07),    # I1450
    (3.6e-5, 0.05),    # I1550
    (2.6e-5, 0.05),    # I1750
    (2.7e-5, 0.05),    # I1850
    (2.3e-5, 0.04),    # I2050
    (2.7e-5, 0.03),    # I2150
    (3.7e-5, 0.03),    # I2350
    (1.7e-5, 0.03),    # I2450
)


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered input/output column layout of a pattern file."""

    input_names: tuple[str, ...]
    input_aliases: tuple[str, ...]
    input_units: tuple[str, ...]
    output_names: tuple[str, ...]
    output_units: tuple[str, ...]

    def __post_init__(self):
        if len(self.input_names) != N_INPUTS or len(self.input_aliases) != N_INPUTS:
            raise ValidationError(
                f"schema must define exactly {N_INPUTS} inputs, "
                f"got {len(self.input_names)}"
            )
        if len(self.output_names) != N_OUTPUTS:
            raise ValidationError(
                f"schema must define exactly {N_OUTPUTS} outputs, "
                f"got {len(self.output_names)}"
            )
        if len(self.input_units) != N_INPUTS or len(self.output_units) != N_OUTPUTS:
            raise ValidationError("unit lists must match the input/output counts")

    @property
    def n_inputs(self) -> int:
        return len(self.input_names)

    @property
    def n_outputs(self) -> int:
        return len(self.output_names)

    def resolve(self, name: str | int) -> int:
        """Map a positional name ("X7"), alias ("V350") or index to a 0-based index."""
        if isinstance(name, (int, np.integer)):
            idx = int(name)
            if not 0 <= idx < self.n_inputs:
                raise ValidationError(f"input index {idx} out of range")
            return idx
        if name in self.input_names:
            return self.input_names.index(name)
        if name in self.input_aliases:
            return self.input_aliases.index(name)
        raise ValidationError(f"unknown input variable {name!r}")

    def header(self, aliases: bool = True) -> list[str]:
        """Column names of the canonical CSV layout (inputs then outputs)."""
        cols = self.input_aliases if aliases else self.input_names
        return list(cols) + list(self.output_names)


DEFAULT_SCHEMA = FeatureSchema(
    input_names=tuple(f"X{i}" for i in range(1, N_INPUTS + 1)),
    input_aliases=INPUT_ALIASES,
    input_units=INPUT_UNITS,
    output_names=OUTPUT_NAMES,
    output_units=OUTPUT_UNITS,
)


@dataclass(frozen=True)
class WorkingRanges:
    """Per-variable native (min, max) bounds for the 40 inputs."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float).copy()
        hi = np.asarray(self.hi, dtype=float).copy()
        if lo.shape != (N_INPUTS,) or hi.shape != (N_INPUTS,):
            raise ValidationError("working ranges must cover all 40 inputs")
        if not np.all(lo < hi):
            bad = int(np.argmin(hi - lo))
            raise ValidationError(f"min must be < max for every variable (X{bad + 1})")
        # Voltage and current channels are magnitudes: their minima must be > 0.
        if not np.all(lo[4:] > 0.0):
            bad = 4 + int(np.argmin(lo[4:]))
            raise ValidationError(f"non-positive minimum for X{bad + 1}")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains(self, X: np.ndarray) -> np.ndarray:
        """Boolean mask of rows whose every entry lies inside the ranges."""
        X = np.asarray(X, dtype=float)
        return np.all((X >= self.lo) & (X <= self.hi), axis=-1)

    def clip(self, X: np.ndarray) -> np.ndarray:
        return np.clip(np.asarray(X, dtype=float), self.lo, self.hi)

    def violations(self, X: np.ndarray, schema: FeatureSchema = DEFAULT_SCHEMA) -> list[str]:
        """Human-readable description of each out-of-range cell."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        rows, cols = np.nonzero((X < self.lo) | (X > self.hi))
        return [
            f"row {r + 1}: {schema.input_aliases[c]}={X[r, c]:g} outside "
            f"[{self.lo[c]:g}, {self.hi[c]:g}]"
            for r, c in zip(rows, cols)
        ]


WORKING_RANGES = WorkingRanges(
    lo=np.array([r[0] for r in _RANGE_TABLE]),
    hi=np.array([r[1] for r in _RANGE_TABLE]),
)
