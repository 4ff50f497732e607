"""Multitask neuroevolution models of induction-motor acoustic quality.

Trains single-hidden-layer product-unit / sigmoid-unit networks with a
mutation-only evolutionary algorithm to predict four acoustic outputs
(equivalent sound pressure level, loudness, roughness, sharpness) from
40 electrical features, and ships the surrounding toolkit: schema-aware
CSV data handling, interval normalization, error metrics, sparse linear
baselines, model interpretation, and a synthetic design-grid data
generator.
"""

__version__ = "0.1.0"

from .analysis import (
    InfluenceReport,
    Surface,
    SurfaceExtremes,
    extremes,
    fixed_point,
    influence,
    surface,
)
from .baselines import (
    LinearBaseline,
    LinearModel,
    fit_elastic_net,
    fit_lasso,
    fit_linear,
    fit_ridge,
    lambda_max,
    select_lambda,
)
from .data import Dataset, load_dataset, save_dataset, split
from .errors import (
    DomainError,
    MotorNoiseError,
    NumericError,
    ParseError,
    SchemaError,
    SerializationError,
    ValidationError,
)
from .evolution import (
    AggregateResult,
    EAConfig,
    EvolutionaryNetRegressor,
    RunHistory,
    evolve,
    fitness,
    init_population,
    parametric_mutation,
    render_aggregate,
    run_experiment,
    structural_mutation,
)
from .metrics import (
    EvalReport,
    MetricReport,
    compute_report,
    evaluate_model,
    mse,
    render_report,
    sep,
)
from .network import (
    BasisKind,
    HiddenNode,
    NetworkModel,
    count_links,
    deserialize,
    eval_basis,
    load_model,
    reference_punn,
    save_model,
    serialize,
)
from .normalize import (
    AffineMap,
    IntervalScaler,
    NormalizationSpec,
    fit_normalizer,
)
from .schema import (
    DEFAULT_SCHEMA,
    OUTPUT_NAMES,
    WORKING_RANGES,
    FeatureSchema,
    WorkingRanges,
)
from .synth import (
    DesignPoint,
    SynthConfig,
    default_normalization,
    design_matrix,
    enumerate_design,
    generate,
    synth_features,
)
