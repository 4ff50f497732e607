"""Evolutionary-programming trainer for the basis-function networks.

Mutation-only evolution (no crossover): each generation the population is
ranked by fitness, the best fraction survives unchanged (elitism) and
also produces parametrically mutated offspring, and the remaining slots
are filled by structural mutation of parents drawn rank-proportionally
from the top half.  Fitness is 1 / (1 + global train MSE) computed in
normalized output space; models that error on any pattern get fitness 0.

Two self-adaptive mutation temperatures (input-side, output-side) scale
the Gaussian parametric noise; both decay by 0.9 whenever a generation
of parametric offspring fails to improve on its parents, with a 1e-4
floor.  All randomness flows through one generator per run, so results
are bit-reproducible from (seed, config, data).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from .data import as_xy
from .errors import ValidationError
from .metrics import EvalReport, evaluate_model
from .network import (
    BasisKind,
    HiddenNode,
    NetworkModel,
    basis_matrix,
    parse_basis,
)
from .normalize import NormalizationSpec, fit_normalizer
from .validation import as_float_matrix

TEMPERATURE_DECAY = 0.9
TEMPERATURE_FLOOR = 1e-4

_PRODUCT_INPUT_RANGE = (-1.0, 1.0)
_SIGMOID_INPUT_RANGE = (-5.0, 5.0)
_OUTPUT_RANGE = (-5.0, 5.0)


@dataclass(frozen=True)
class EAConfig:
    """Training configuration; the defaults are the standard setup.

    ``input_hidden_weight_range=None`` resolves per basis kind: [-1, 1]
    for product units, [-5, 5] for sigmoid units.
    """

    runs: int = 30
    generations: int = 200
    population_size: int = 1000
    nodes_add_delete_range: tuple[int, int] = (1, 2)
    min_init_nodes: int = 1
    max_init_nodes: int = 1
    max_nodes: int = 3
    input_hidden_weight_range: tuple[float, float] | None = None
    hidden_output_weight_range: tuple[float, float] = _OUTPUT_RANGE
    seed: int = 0
    structural_fraction: float = 0.8
    parametric_fraction: float = 0.1
    initial_temperatures: tuple[float, float] = (1.0, 0.1)
    max_init_connections: int = 6
    time_budget_s: float | None = None

    def __post_init__(self):
        if self.runs < 1 or self.generations < 0 or self.population_size < 3:
            raise ValidationError("runs >= 1, generations >= 0, population >= 3 required")
        if not (0 < self.structural_fraction < 1 and 0 < self.parametric_fraction < 1):
            raise ValidationError("mutation fractions must lie in (0, 1)")
        lo, hi = self.nodes_add_delete_range
        if not 1 <= lo <= hi:
            raise ValidationError("nodes_add_delete_range must satisfy 1 <= lo <= hi")
        if not 1 <= self.min_init_nodes <= self.max_init_nodes <= self.max_nodes:
            raise ValidationError("node init bounds must satisfy 1 <= min <= max <= max_nodes")
        if self.max_init_connections < 1:
            raise ValidationError("max_init_connections must be >= 1")

    def for_mode(self, mode: str) -> "EAConfig":
        """'simple' keeps 200 generations; 'complex' raises them to 6000."""
        if mode == "simple":
            return replace(self, generations=200)
        if mode == "complex":
            return replace(self, generations=6000)
        raise ValidationError(f"mode must be 'simple' or 'complex', got {mode!r}")

    def slot_counts(self) -> tuple[int, int, int]:
        """(elite copies, parametric offspring, structural offspring)."""
        pop = self.population_size
        n_param = max(1, int(round(pop * self.parametric_fraction)))
        n_elite = max(1, int(round(pop * (1.0 - self.parametric_fraction - self.structural_fraction))))
        n_struct = pop - n_elite - n_param
        if n_struct < 1:
            raise ValidationError("population too small for the configured fractions")
        return n_elite, n_param, n_struct


def resolve_weight_ranges(config: EAConfig, basis: BasisKind) -> tuple[tuple[float, float], tuple[float, float]]:
    in_range = config.input_hidden_weight_range
    if in_range is None:
        in_range = _PRODUCT_INPUT_RANGE if basis is BasisKind.PRODUCT else _SIGMOID_INPUT_RANGE
    return tuple(in_range), tuple(config.hidden_output_weight_range)


def _nonzero(values: np.ndarray) -> np.ndarray:
    # Exact zeros are reserved for "no link"; nudge the measure-zero case.
    return np.where(values == 0.0, 1e-12, values)


def _random_node(
    n_inputs: int,
    basis: BasisKind,
    in_range: tuple[float, float],
    max_connections: int,
    rng: np.random.Generator,
) -> HiddenNode:
    k = int(rng.integers(1, min(max_connections, n_inputs) + 1))
    idx = np.sort(rng.choice(n_inputs, size=k, replace=False))
    w = _nonzero(rng.uniform(in_range[0], in_range[1], size=k))
    bias = float(rng.uniform(*in_range)) if basis is BasisKind.SIGMOID else None
    return HiddenNode(weights={int(i): float(v) for i, v in zip(idx, w)}, bias=bias)


def _random_model(
    config: EAConfig,
    n_inputs: int,
    basis: BasisKind,
    rng: np.random.Generator,
    normalization: NormalizationSpec | None,
) -> NetworkModel:
    in_range, out_range = resolve_weight_ranges(config, basis)
    m = int(rng.integers(config.min_init_nodes, config.max_init_nodes + 1))
    nodes = tuple(
        _random_node(n_inputs, basis, in_range, config.max_init_connections, rng)
        for _ in range(m)
    )
    coeffs = _nonzero(rng.uniform(out_range[0], out_range[1], size=(4, m)))
    bias = rng.uniform(out_range[0], out_range[1], size=4)
    return NetworkModel(
        basis=basis, hidden=nodes, output_coeffs=coeffs, output_bias=bias,
        n_inputs=n_inputs, normalization=normalization,
    )


def init_population(
    config: EAConfig,
    n_inputs,
    basis: BasisKind,
    rng: np.random.Generator,
    normalization: NormalizationSpec | None = None,
) -> list[NetworkModel]:
    """Population of random models within the configured bounds.

    ``n_inputs`` may be an integer or anything with an ``n_inputs``
    attribute (e.g. a FeatureSchema).
    """
    d = n_inputs if isinstance(n_inputs, int) else n_inputs.n_inputs
    return [
        _random_model(config, d, basis, rng, normalization)
        for _ in range(config.population_size)
    ]


class _Evaluator:
    """Vectorized fitness evaluation on fixed normalized training data."""

    def __init__(self, Xstar: np.ndarray, Ystar: np.ndarray, basis: BasisKind):
        self.X = Xstar
        self.Y = Ystar
        self.basis = basis
        with np.errstate(invalid="ignore", divide="ignore"):
            self.lnX = np.log(Xstar) if basis is BasisKind.PRODUCT else None

    def global_mse(self, model: NetworkModel) -> float:
        """Global normalized train MSE, or +inf if evaluation failed."""
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            B = basis_matrix(model.hidden, self.basis, self.X, self.lnX)
            preds = model.output_bias + B @ model.output_coeffs.T
            diff = preds - self.Y
            per_output = np.mean(diff * diff, axis=0)
            total = float(per_output.sum())
        if not np.isfinite(total):
            return float("inf")
        return total

    def fitness(self, model: NetworkModel) -> float:
        g = self.global_mse(model)
        return 0.0 if not np.isfinite(g) else 1.0 / (1.0 + g)


def fitness(model: NetworkModel, train) -> float:
    """1 / (1 + global normalized train MSE); erroring models score 0.

    Uses the model's attached normalization to map the native-unit data
    into its working space.
    """
    X, Y = as_xy(train)
    if model.normalization is None:
        raise ValidationError("fitness requires a model with attached normalization")
    Xstar = model.normalization.normalize_inputs(X)
    Ystar = model.normalization.normalize_outputs(Y)
    if model.basis is BasisKind.PRODUCT and np.any(Xstar[:, model.connected_inputs()] <= 0):
        return 0.0
    return _Evaluator(Xstar, Ystar, model.basis).fitness(model)


def parametric_mutation(
    model: NetworkModel,
    temperatures: tuple[float, float],
    rng: np.random.Generator,
    input_range: tuple[float, float] | None = None,
    output_range: tuple[float, float] = _OUTPUT_RANGE,
) -> NetworkModel:
    """Gaussian-perturb every existing weight; topology is untouched.

    Noise SDs are temperature * range-width, with the first temperature
    applied to input-side parameters (weights and node biases) and the
    second to the output layer.  A perturbation landing exactly on zero
    or outside float range is resampled once, then the weight is kept.
    """
    t_in, t_out = temperatures
    if input_range is None:
        input_range = (
            _PRODUCT_INPUT_RANGE if model.basis is BasisKind.PRODUCT else _SIGMOID_INPUT_RANGE
        )
    sd_in = t_in * (input_range[1] - input_range[0])
    sd_out = t_out * (output_range[1] - output_range[0])

    def _perturb(values: np.ndarray, sd: float) -> np.ndarray:
        noise = rng.normal(0.0, sd, size=values.shape)
        out = values + noise
        bad = ~np.isfinite(out) | (out == 0.0)
        if np.any(bad):
            out = np.where(bad, values + rng.normal(0.0, sd, size=values.shape), out)
            bad = ~np.isfinite(out) | (out == 0.0)
            out = np.where(bad, values, out)
        return out

    nodes = []
    for node in model.hidden:
        new_w = _perturb(node.values, sd_in)
        bias = node.bias
        if bias is not None:
            bias = float(_perturb(np.array([bias]), sd_in)[0])
        nodes.append(
            HiddenNode(
                weights={int(i): float(v) for i, v in zip(node.indices, new_w)},
                bias=bias,
            )
        )
    # Exactly-zero output coefficients are structural non-links; keep them.
    coeffs = np.where(
        model.output_coeffs == 0.0, 0.0, _perturb(model.output_coeffs, sd_out)
    )
    noise = rng.normal(0.0, sd_out, size=4)
    bias = np.where(np.isfinite(model.output_bias + noise),
                    model.output_bias + noise, model.output_bias)
    return NetworkModel(
        basis=model.basis, hidden=tuple(nodes), output_coeffs=coeffs,
        output_bias=bias, n_inputs=model.n_inputs, normalization=model.normalization,
    )


def structural_mutation(
    model: NetworkModel,
    config: EAConfig,
    rng: np.random.Generator,
    stats: dict | None = None,
) -> NetworkModel:
    """Apply one operator drawn uniformly from {add nodes, delete nodes,
    add connection, delete connection}.

    Node counts to add/delete come from the configured range, clamped so
    1 <= m <= max_nodes.  Deleting the last input of a node deletes the
    node instead (never below one node); infeasible operators are no-ops,
    recorded in ``stats`` when given.
    """
    in_range, out_range = resolve_weight_ranges(config, model.basis)
    nodes = list(model.hidden)
    coeffs = model.output_coeffs
    op = int(rng.integers(0, 4))
    lo, hi = config.nodes_add_delete_range

    def _skip(name: str) -> NetworkModel:
        if stats is not None:
            stats[name] = stats.get(name, 0) + 1
        return model

    if op == 0:  # add node(s)
        count = min(int(rng.integers(lo, hi + 1)), config.max_nodes - len(nodes))
        if count <= 0:
            return _skip("add_node_skipped")
        new_nodes = [
            _random_node(model.n_inputs, model.basis, in_range, config.max_init_connections, rng)
            for _ in range(count)
        ]
        new_cols = _nonzero(rng.uniform(out_range[0], out_range[1], size=(4, count)))
        return NetworkModel(
            basis=model.basis, hidden=tuple(nodes + new_nodes),
            output_coeffs=np.hstack([coeffs, new_cols]),
            output_bias=model.output_bias, n_inputs=model.n_inputs,
            normalization=model.normalization,
        )

    if op == 1:  # delete node(s)
        count = min(int(rng.integers(lo, hi + 1)), len(nodes) - 1)
        if count <= 0:
            return _skip("delete_node_skipped")
        victims = set(rng.choice(len(nodes), size=count, replace=False).tolist())
        keep = [j for j in range(len(nodes)) if j not in victims]
        return NetworkModel(
            basis=model.basis, hidden=tuple(nodes[j] for j in keep),
            output_coeffs=coeffs[:, keep], output_bias=model.output_bias,
            n_inputs=model.n_inputs, normalization=model.normalization,
        )

    if op == 2:  # add connection
        candidates = [j for j, node in enumerate(nodes) if node.n_connections < model.n_inputs]
        if not candidates:
            return _skip("add_connection_skipped")
        j = candidates[int(rng.integers(0, len(candidates)))]
        absent = sorted(set(range(model.n_inputs)) - set(nodes[j].weights))
        new_input = absent[int(rng.integers(0, len(absent)))]
        # New single connections start near zero so they are close to
        # fitness-neutral (x^0 = 1 for product units) and can grow under
        # parametric mutation instead of dying on arrival.
        span = 0.05 * (in_range[1] - in_range[0])
        weight = float(_nonzero(rng.uniform(-span, span, size=1))[0])
        weights = dict(nodes[j].weights)
        weights[new_input] = weight
        nodes[j] = HiddenNode(weights=weights, bias=nodes[j].bias)
        return NetworkModel(
            basis=model.basis, hidden=tuple(nodes), output_coeffs=coeffs,
            output_bias=model.output_bias, n_inputs=model.n_inputs,
            normalization=model.normalization,
        )

    # delete connection
    j = int(rng.integers(0, len(nodes)))
    node = nodes[j]
    if node.n_connections >= 2:
        # Remove the least-loaded link: a near-zero exponent/weight is
        # near-inert, so deletion mirrors the near-neutral additions and
        # keeps genomes from ratcheting up in size.
        victim = int(node.indices[int(np.argmin(np.abs(node.values)))])
        weights = {i: w for i, w in node.weights.items() if i != victim}
        nodes[j] = HiddenNode(weights=weights, bias=node.bias)
        return NetworkModel(
            basis=model.basis, hidden=tuple(nodes), output_coeffs=coeffs,
            output_bias=model.output_bias, n_inputs=model.n_inputs,
            normalization=model.normalization,
        )
    if len(nodes) >= 2:  # last input: delete the whole node instead
        keep = [i for i in range(len(nodes)) if i != j]
        return NetworkModel(
            basis=model.basis, hidden=tuple(nodes[i] for i in keep),
            output_coeffs=coeffs[:, keep], output_bias=model.output_bias,
            n_inputs=model.n_inputs, normalization=model.normalization,
        )
    return _skip("delete_connection_skipped")


@dataclass(frozen=True)
class RunHistory:
    """Per-generation best fitness / best normalized train MSE of one run.

    Entry 0 describes the initial population; elitism makes both series
    monotone (fitness non-decreasing, MSE non-increasing).
    """

    best_fitness: np.ndarray
    best_mse: np.ndarray
    wall_time_s: float
    generations: int


def export_history(history: RunHistory) -> str:
    lines = ["generation,best_fitness,best_mse"]
    for g, (f, m) in enumerate(zip(history.best_fitness, history.best_mse)):
        lines.append(f"{g},{f!r},{m!r}")
    return "\n".join(lines) + "\n"


def evolve(
    train,
    config: EAConfig,
    basis: BasisKind = BasisKind.PRODUCT,
    normalization: NormalizationSpec | None = None,
) -> tuple[NetworkModel, RunHistory]:
    """Run one evolutionary training on a dataset (or (X, Y) pair).

    Returns the elite-best model (carrying the fitted normalization) and
    the run history.  Fully deterministic under (seed, config, data).
    """
    basis = parse_basis(basis)
    X, Y = as_xy(train)
    if X.shape[0] == 0:
        raise ValidationError("cannot train on an empty dataset")
    spec = normalization if normalization is not None else fit_normalizer((X, Y))
    Xstar = spec.normalize_inputs(X)
    Ystar = spec.normalize_outputs(Y)
    if basis is BasisKind.PRODUCT and np.any(Xstar <= 0):
        raise ValidationError(
            "normalized inputs must be strictly positive for product units"
        )
    evaluator = _Evaluator(Xstar, Ystar, basis)
    rng = np.random.default_rng(config.seed)
    in_range, out_range = resolve_weight_ranges(config, basis)
    n_elite, n_param, n_struct = config.slot_counts()

    population = init_population(config, X.shape[1], basis, rng, spec)
    fits = np.array([evaluator.fitness(m) for m in population])
    temperatures = tuple(config.initial_temperatures)

    best_fit_history = [float(fits.max())]
    best_mse_history = [_mse_from_fitness(float(fits.max()))]
    t0 = time.perf_counter()

    for _ in range(config.generations):
        order = np.argsort(-fits, kind="stable")
        new_pop: list[NetworkModel] = [population[i] for i in order[:n_elite]]
        new_fits: list[float] = [float(fits[i]) for i in order[:n_elite]]

        improved = False
        for i in order[:n_param]:
            child = parametric_mutation(population[i], temperatures, rng, in_range, out_range)
            child_fit = evaluator.fitness(child)
            if child_fit > fits[i]:
                improved = True
            new_pop.append(child)
            new_fits.append(child_fit)
        # Self-adaptation: cool on a fruitless generation, rewarm (up to
        # the initial value) when mutation is paying off, so the step
        # size hovers at the productive scale.
        if improved:
            temperatures = tuple(
                min(t / TEMPERATURE_DECAY, t0)
                for t, t0 in zip(temperatures, config.initial_temperatures)
            )
        else:
            temperatures = tuple(
                max(t * TEMPERATURE_DECAY, TEMPERATURE_FLOOR) for t in temperatures
            )

        top_half = order[: max(1, len(order) // 2)]
        weights = np.arange(len(top_half), 0, -1, dtype=float)
        probs = weights / weights.sum()
        parents = rng.choice(top_half, size=n_struct, p=probs)
        for pid in parents:
            child = structural_mutation(population[pid], config, rng)
            new_pop.append(child)
            new_fits.append(evaluator.fitness(child))

        population = new_pop
        fits = np.array(new_fits)
        gen_best = float(fits.max())
        best_fit_history.append(gen_best)
        best_mse_history.append(_mse_from_fitness(gen_best))
        if config.time_budget_s is not None and time.perf_counter() - t0 > config.time_budget_s:
            break

    best_idx = int(np.argmax(fits))
    history = RunHistory(
        best_fitness=np.array(best_fit_history),
        best_mse=np.array(best_mse_history),
        wall_time_s=time.perf_counter() - t0,
        generations=len(best_fit_history) - 1,
    )
    return population[best_idx], history


def _mse_from_fitness(f: float) -> float:
    return float("inf") if f <= 0 else 1.0 / f - 1.0


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one independent run inside an experiment."""

    seed: int
    train_mse: float  # global normalized train MSE of the best model
    report: EvalReport  # native-unit test metrics
    model: NetworkModel
    history: RunHistory


@dataclass(frozen=True)
class AggregateResult:
    """Mean/SD statistics over runs plus the best-by-train-MSE model."""

    records: tuple[RunRecord, ...]
    mean_mse: np.ndarray
    sd_mse: np.ndarray
    mean_global_mse: float
    sd_global_mse: float
    mean_sep: np.ndarray
    sd_sep: np.ndarray
    mean_global_sep: float
    sd_global_sep: float
    mean_links: float
    sd_links: float
    best: RunRecord


def _single_run(train, test, config: EAConfig, basis: BasisKind, run_index: int,
                normalization: NormalizationSpec | None) -> RunRecord:
    run_config = replace(config, seed=config.seed + run_index)
    model, history = evolve(train, run_config, basis, normalization)
    return RunRecord(
        seed=run_config.seed,
        train_mse=float(history.best_mse[-1]),
        report=evaluate_model(model, test),
        model=model,
        history=history,
    )


def run_experiment(
    train,
    test,
    config: EAConfig,
    basis: BasisKind = BasisKind.PRODUCT,
    n_jobs: int = 1,
) -> AggregateResult:
    """Run ``config.runs`` independent evolutions (seeds seed+0..seed+r-1)
    and aggregate their native-unit test metrics.

    The "best" record minimizes global normalized train MSE; parallel
    execution (n_jobs > 1) changes nothing but wall time.
    """
    basis = parse_basis(basis)
    spec = fit_normalizer(as_xy(train))
    if n_jobs == 1:
        records = [
            _single_run(train, test, config, basis, r, spec) for r in range(config.runs)
        ]
    else:
        records = Parallel(n_jobs=n_jobs)(
            delayed(_single_run)(train, test, config, basis, r, spec)
            for r in range(config.runs)
        )
    per_mse = np.array([r.report.metrics.per_output_mse for r in records])
    glob_mse = np.array([r.report.metrics.global_mse for r in records])
    per_sep = np.array([r.report.metrics.per_output_sep for r in records])
    glob_sep = np.array([r.report.metrics.global_sep for r in records])
    links = np.array([r.report.links for r in records], dtype=float)
    best = records[int(np.argmin([r.train_mse for r in records]))]
    return AggregateResult(
        records=tuple(records),
        mean_mse=per_mse.mean(axis=0), sd_mse=per_mse.std(axis=0),
        mean_global_mse=float(glob_mse.mean()), sd_global_mse=float(glob_mse.std()),
        mean_sep=per_sep.mean(axis=0), sd_sep=per_sep.std(axis=0),
        mean_global_sep=float(glob_sep.mean()), sd_global_sep=float(glob_sep.std()),
        mean_links=float(links.mean()), sd_links=float(links.std()),
        best=best,
    )


def render_aggregate(result: AggregateResult, output_names=("LAEQ", "L", "R", "SA")) -> str:
    """Tabulate an experiment: Mean / SD / Best rows, MSE and SEP blocks."""
    width = 11

    def _row(label, glob_mse, per_mse, glob_sep, per_sep, links):
        cells = [f"{glob_mse:.4g}", *(f"{v:.4g}" for v in per_mse),
                 f"{glob_sep:.4g}", *(f"{v:.4g}" for v in per_sep)]
        return f"{label:10s}" + "".join(f"{c:<{width}}" for c in cells) + f"{links:.4g}"

    names = ["Global", *output_names]
    lines = [
        f"{'':10s}" + "MSE".ljust(width * len(names)) + "SEP",
        f"{'':10s}" + "".join(f"{n:<{width}}" for n in names) * 2 + "#Links",
        _row("Mean", result.mean_global_mse, result.mean_mse,
             result.mean_global_sep, result.mean_sep, result.mean_links),
        _row("SD", result.sd_global_mse, result.sd_mse,
             result.sd_global_sep, result.sd_sep, result.sd_links),
        _row("Best", result.best.report.metrics.global_mse,
             result.best.report.metrics.per_output_mse,
             result.best.report.metrics.global_sep,
             result.best.report.metrics.per_output_sep,
             float(result.best.report.links)),
    ]
    return "\n".join(line.rstrip() for line in lines) + "\n"


class EvolutionaryNetRegressor(RegressorMixin, BaseEstimator):
    """sklearn-style estimator around the evolutionary trainer.

    ``fit(X, y)`` runs ``runs`` independent evolutions on native-unit
    data (y must have 4 columns) and keeps the best-by-train-MSE model;
    ``predict`` returns native-unit outputs.
    """

    def __init__(
        self,
        basis: str = "product",
        runs: int = 30,
        generations: int = 200,
        population_size: int = 1000,
        max_nodes: int = 3,
        nodes_add_delete_range: tuple[int, int] = (1, 2),
        min_init_nodes: int = 1,
        max_init_nodes: int = 1,
        input_hidden_weight_range: tuple[float, float] | None = None,
        hidden_output_weight_range: tuple[float, float] = _OUTPUT_RANGE,
        structural_fraction: float = 0.8,
        parametric_fraction: float = 0.1,
        initial_temperatures: tuple[float, float] = (1.0, 0.1),
        max_init_connections: int = 6,
        mode: str | None = None,
        seed: int = 0,
    ):
        self.basis = basis
        self.runs = runs
        self.generations = generations
        self.population_size = population_size
        self.max_nodes = max_nodes
        self.nodes_add_delete_range = nodes_add_delete_range
        self.min_init_nodes = min_init_nodes
        self.max_init_nodes = max_init_nodes
        self.input_hidden_weight_range = input_hidden_weight_range
        self.hidden_output_weight_range = hidden_output_weight_range
        self.structural_fraction = structural_fraction
        self.parametric_fraction = parametric_fraction
        self.initial_temperatures = initial_temperatures
        self.max_init_connections = max_init_connections
        self.mode = mode
        self.seed = seed

    def _config(self) -> EAConfig:
        config = EAConfig(
            runs=self.runs,
            generations=self.generations,
            population_size=self.population_size,
            nodes_add_delete_range=tuple(self.nodes_add_delete_range),
            min_init_nodes=self.min_init_nodes,
            max_init_nodes=self.max_init_nodes,
            max_nodes=self.max_nodes,
            input_hidden_weight_range=self.input_hidden_weight_range,
            hidden_output_weight_range=tuple(self.hidden_output_weight_range),
            seed=self.seed,
            structural_fraction=self.structural_fraction,
            parametric_fraction=self.parametric_fraction,
            initial_temperatures=tuple(self.initial_temperatures),
            max_init_connections=self.max_init_connections,
        )
        if self.mode is not None:
            config = config.for_mode(self.mode)
        return config

    def fit(self, X, y):
        X = as_float_matrix(X, name="X")
        y = as_float_matrix(y, name="y", n_cols=4)
        config = self._config()
        basis = parse_basis(self.basis)
        spec = fit_normalizer((X, y))
        best_model = None
        best_mse = np.inf
        histories = []
        for r in range(config.runs):
            model, history = evolve((X, y), replace(config, seed=config.seed + r), basis, spec)
            histories.append(history)
            if history.best_mse[-1] < best_mse:
                best_mse = float(history.best_mse[-1])
                best_model = model
        self.best_model_ = best_model
        self.history_ = histories[int(np.argmin([h.best_mse[-1] for h in histories]))]
        self.train_mse_ = best_mse
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        if not hasattr(self, "best_model_"):
            raise NotFittedError("EvolutionaryNetRegressor is not fitted yet")
        return self.best_model_.predict(X)
