"""Synthetic experimental-design data generation.

Reproduces the measurement campaign's design grid — three modulation
techniques crossed with modulation indices M in {5, 7, ..., 21} and pole
counts p in {2, 4, 6, 12} — and synthesizes a labelled dataset at desk
scale, using the built-in reference network as ground truth.  Feature
synthesis is deliberately simple (fixed harmonic proportions times a
deterministic per-point jitter); the goal is a controllable ground truth
for training experiments, not electrical physics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .data import Dataset
from .errors import ValidationError
from .network import NetworkModel, reference_punn
from .normalize import (
    DEFAULT_INPUT_INTERVAL,
    AffineMap,
    NormalizationSpec,
    fit_affine_from_bounds,
)
from .schema import DEFAULT_SCHEMA, WORKING_RANGES

M_VALUES = (5, 7, 9, 11, 13, 15, 17, 19, 21)
P_VALUES = (2, 4, 6, 12)
TECHNIQUES = ("SLPWM", "HIPWM-FMTC", "HIPWM-FMTC2")

#: Control parameter k of the SLPWM technique, 11 settings per M.
SLPWM_K: dict[int, tuple[float, ...]] = {
    5: (-0.74, -0.84, -0.94, -1.04, -1.14, -1.24, -1.34, -1.44, -1.54, -1.64, -1.74),
    7: (1.24, 1.34, 1.44, 1.54, 1.64, 1.74, 1.84, 1.94, 2.04, 2.14, 2.24),
    9: (-2.74, -2.64, -2.54, -2.44, -2.34, -2.24, -2.14, -2.04, -1.94, -1.84, -1.75),
    11: (2.25, 2.35, 2.45, 2.55, 2.65, 2.75, 2.85, 2.95, 3.05, 3.15, 3.24),
    13: (-3.74, -3.64, -3.54, -3.44, -3.34, -3.24, -3.14, -3.04, -2.94, -2.84, -2.75),
    15: (3.25, 3.35, 3.45, 3.55, 3.65, 3.75, 3.85, 3.95, 4.05, 4.15, 4.24),
    17: (-4.74, -4.64, -4.54, -4.44, -4.34, -4.24, -4.14, -4.04, -3.94, -3.84, -3.75),
    19: (4.25, 4.35, 4.45, 4.55, 4.65, 4.75, 4.85, 4.95, 5.05, 5.15, 5.24),
    21: (-5.74, -5.64, -5.54, -5.44, -5.34, -5.24, -5.14, -5.04, -4.94, -4.84, -4.75),
}

#: HIPWM-FMTC control grid per M: (kc_min, kc_max, fc_min, fc_max,
#: delta_kc, delta_fc, published test count).  (k_c, f_c) step together,
#: so the test count equals the number of paired settings.  Where the
#: nominal delta disagrees with the published count (M=11), the count
#: wins and the grid is an even subdivision of the range.
FMTC_GRID: dict[int, tuple[float, float, float, float, float, float, int]] = {
    5: (0.0, 10.0, 5.0, 10.0, 0.25, 0.125, 41),
    7: (0.0, 14.0, 7.0, 14.0, 0.25, 0.125, 57),
    9: (0.0, 18.0, 9.0, 18.0, 0.30, 0.15, 61),
    11: (0.0, 22.0, 11.0, 22.0, 0.35, 0.175, 64),
    13: (0.0, 26.0, 13.0, 26.0, 0.50, 0.25, 53),
    15: (0.0, 30.0, 15.0, 30.0, 0.50, 0.25, 61),
    17: (0.0, 34.0, 17.0, 34.0, 0.50, 0.25, 69),
    19: (0.0, 38.0, 19.0, 38.0, 0.50, 0.25, 77),
    21: (0.0, 42.0, 21.0, 42.0, 0.50, 0.25, 85),
}

#: HIPWM-FMTC2 control angle alpha in degrees.
FMTC2_ALPHAS = tuple(range(17, 46))

#: Harmonic amplitude as a percentage of the 50 Hz fundamental, for the
#: voltage channels X6..X21 and the current channels X23..X40.
VOLTAGE_HARMONIC_PCT = (
    8.19, 8.05, 8.72, 11.43, 11.50, 9.83, 9.34, 11.05,
    10.14, 8.59, 8.02, 8.36, 7.73, 7.40, 6.77, 7.00,
)
CURRENT_HARMONIC_PCT = (
    2.87, 2.25, 19.35, 14.19, 10.55, 11.48, 9.04, 6.88, 5.49,
    5.90, 4.70, 3.68, 3.05, 2.93, 2.47, 2.17, 1.86, 1.74,
)

#: Nominal native spans of the four outputs used to calibrate the
#: synthetic labels (dB, sone, asper, acum).
NOMINAL_OUTPUT_RANGES = ((55.0, 95.0), (60.0, 110.0), (0.10, 0.15), (4.5, 6.5))

_FUNDAMENTAL_V_RANGE = (40.0, 230.0)
_FUNDAMENTAL_I_RANGE = (0.06, 0.34)


@dataclass(frozen=True)
class DesignPoint:
    """One test of the design grid: technique, M, p, and control setting.

    ``phase`` is the control setting's position within its per-M list,
    rescaled to [-1, 1]; it drives the within-group variation of the
    synthesized fundamentals.
    """

    technique: str
    modulation_index: int
    poles: int
    control: tuple[float, ...]
    phase: float


def _phase(i: int, count: int) -> float:
    if count <= 1:
        return 0.0
    return 2.0 * i / (count - 1) - 1.0


@lru_cache(maxsize=1)
def enumerate_design() -> tuple[DesignPoint, ...]:
    """The full ordered design: 396 SLPWM + 2272 HIPWM-FMTC + 1044
    HIPWM-FMTC2 = 3712 points."""
    points: list[DesignPoint] = []
    for m in M_VALUES:
        ks = SLPWM_K[m]
        for i, k in enumerate(ks):
            for p in P_VALUES:
                points.append(DesignPoint("SLPWM", m, p, (k,), _phase(i, len(ks))))
    for m in M_VALUES:
        kc_min, kc_max, fc_min, fc_max, _, _, tests = FMTC_GRID[m]
        kcs = np.linspace(kc_min, kc_max, tests)
        fcs = np.linspace(fc_min, fc_max, tests)
        for i in range(tests):
            for p in P_VALUES:
                points.append(
                    DesignPoint(
                        "HIPWM-FMTC", m, p,
                        (float(kcs[i]), float(fcs[i])), _phase(i, tests),
                    )
                )
    for m in M_VALUES:
        for i, alpha in enumerate(FMTC2_ALPHAS):
            for p in P_VALUES:
                points.append(
                    DesignPoint(
                        "HIPWM-FMTC2", m, p,
                        (float(alpha),), _phase(i, len(FMTC2_ALPHAS)),
                    )
                )
    return tuple(points)


def harmonic_amplitude(fundamental: float, percent: float, jitter: float = 1.0) -> float:
    """Amplitude of one harmonic given its fundamental and nominal percentage."""
    return fundamental * percent / 100.0 * jitter


def _point_rng(point: DesignPoint, seed: int) -> np.random.Generator:
    key = (
        TECHNIQUES.index(point.technique),
        point.modulation_index,
        point.poles,
        *(int(round(c * 1000)) + 2**20 for c in point.control),
    )
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=key))


def synth_features(point: DesignPoint, seed: int = 0) -> np.ndarray:
    """Deterministic 40-vector of native-unit features for one design point.

    p and M are copied exactly; the fundamentals grow monotonically with
    M (with a small control-dependent wiggle); each harmonic is its
    nominal percentage of the fundamental times a per-point jitter in
    [0.5, 1.5]; THD figures are the root-sum-square of the harmonics over
    the fundamental, in percent.  Everything is clamped into the
    documented working ranges.
    """
    rng = _point_rng(point, seed)
    jitters = rng.uniform(0.5, 1.5, size=len(VOLTAGE_HARMONIC_PCT) + len(CURRENT_HARMONIC_PCT))
    m_frac = (point.modulation_index - M_VALUES[0]) / (M_VALUES[-1] - M_VALUES[0])
    wiggle = 1.0 + 0.05 * point.phase
    v50 = (_FUNDAMENTAL_V_RANGE[0] + m_frac * np.diff(_FUNDAMENTAL_V_RANGE)[0]) * wiggle
    i50 = (_FUNDAMENTAL_I_RANGE[0] + m_frac * np.diff(_FUNDAMENTAL_I_RANGE)[0]) * wiggle

    n_v = len(VOLTAGE_HARMONIC_PCT)
    v_harm = np.array([
        harmonic_amplitude(v50, pct, j)
        for pct, j in zip(VOLTAGE_HARMONIC_PCT, jitters[:n_v])
    ])
    i_harm = np.array([
        harmonic_amplitude(i50, pct, j)
        for pct, j in zip(CURRENT_HARMONIC_PCT, jitters[n_v:])
    ])
    vthd = 100.0 * np.sqrt(np.sum(v_harm**2)) / v50
    ithd = 100.0 * np.sqrt(np.sum(i_harm**2)) / i50

    x = np.concatenate((
        [vthd, ithd, float(point.poles), float(point.modulation_index), v50],
        v_harm,
        [i50],
        i_harm,
    ))
    return WORKING_RANGES.clip(x)


@lru_cache(maxsize=4)
def design_matrix(seed: int = 0) -> np.ndarray:
    """Feature matrix (3712 x 40) for the full design under one seed."""
    X = np.array([synth_features(pt, seed) for pt in enumerate_design()])
    X.setflags(write=False)
    return X


@lru_cache(maxsize=4)
def default_normalization(seed: int = 0) -> NormalizationSpec:
    """The package's standard normalization for the reference model.

    Inputs map the documented working ranges onto [0.1, 1.1] (so any
    in-range native value is valid for product units).  Outputs are
    calibrated so the reference model's normalized predictions over the
    design dataset span the nominal native output ranges.
    """
    inputs = fit_affine_from_bounds(
        WORKING_RANGES.lo, WORKING_RANGES.hi, DEFAULT_INPUT_INTERVAL
    )
    raw = reference_punn(normalization=None)
    ystar = raw.predict_normalized(inputs.forward(design_matrix(seed)))
    smin = ystar.min(axis=0)
    smax = ystar.max(axis=0)
    native_lo = np.array([r[0] for r in NOMINAL_OUTPUT_RANGES])
    native_hi = np.array([r[1] for r in NOMINAL_OUTPUT_RANGES])
    scale = (smax - smin) / (native_hi - native_lo)
    offset = smin - native_lo * scale
    return NormalizationSpec(inputs=inputs, outputs=AffineMap(scale, offset, interval=None))


def default_noise_sds() -> np.ndarray:
    """Per-output Gaussian noise SD: 2% of each nominal output span."""
    return np.array([0.02 * (hi - lo) for lo, hi in NOMINAL_OUTPUT_RANGES])


@dataclass(frozen=True)
class SynthConfig:
    """Configuration of the synthetic dataset generator."""

    seed: int = 0
    noise_sds: tuple[float, ...] | None = None
    label_model: NetworkModel | None = None

    def resolved_noise_sds(self) -> np.ndarray:
        sds = default_noise_sds() if self.noise_sds is None else np.asarray(
            self.noise_sds, dtype=float
        )
        if sds.shape != (4,):
            raise ValidationError("noise_sds must have one entry per output")
        if np.any(sds < 0):
            raise ValidationError("noise SDs must be >= 0")
        return sds


def generate(config: SynthConfig = SynthConfig()) -> Dataset:
    """Generate the full 3712-pattern labelled dataset.

    Labels are the label-source model's native predictions plus
    independent Gaussian noise per output.
    """
    sds = config.resolved_noise_sds()
    model = config.label_model if config.label_model is not None else reference_punn()
    X = design_matrix(config.seed)
    Y = model.predict(X)
    if np.any(sds > 0):
        noise_rng = np.random.default_rng(
            np.random.SeedSequence(entropy=int(config.seed), spawn_key=(999_001,))
        )
        Y = Y + noise_rng.normal(0.0, sds, size=Y.shape)
    provenance = (
        f"motornoise synthetic design dataset | seed={config.seed} "
        f"| noise_sds={[float(f'{s:.6g}') for s in sds]} "
        f"| labels={'custom-model' if config.label_model is not None else 'reference-punn'}"
    )
    return Dataset(X, Y, DEFAULT_SCHEMA, provenance)
