"""Command-line interface.

Subcommands: gen, train, eval, predict, analyze, baseline.  Flags
override a plain-text key=value config file (--config), which overrides
the built-in defaults.  Every artifact starts with a provenance header
(tool version, command, seed) and is written atomically; identical
invocations on identical inputs produce byte-identical files.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric error.
"""

from __future__ import annotations

import argparse
import csv
import os
import shlex
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import export_influence, export_surface, fixed_point, influence, surface
from .baselines import (
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
from .evolution import EAConfig, export_history, render_aggregate, run_experiment
from .metrics import evaluate_model, render_report
from .network import load_model, parse_basis, reference_punn, serialize
from .normalize import fit_normalizer
from .schema import DEFAULT_SCHEMA
from .synth import SynthConfig, default_noise_sds, generate

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

_DATA_ERRORS = (SchemaError, ParseError, ValidationError, SerializationError,
                FileNotFoundError)
_NUMERIC_ERRORS = (DomainError, NumericError)


def _default_seed() -> int:
    return int(os.environ.get("MOTORNOISE_SEED", "0"))


def _atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _provenance(args: argparse.Namespace) -> str:
    return (
        f"motornoise {__version__} | {args.command} "
        f"{shlex.join(args._raw_argv[1:])} | seed={args.seed}"
    )


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{line_no}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve_model(spec: str):
    if spec == "reference":
        return reference_punn()
    return load_model(spec)


def _echo_config(args: argparse.Namespace, skip=("_raw_argv", "func", "command")) -> None:
    pairs = [f"{k}={v}" for k, v in sorted(vars(args).items()) if k not in skip]
    print(f"[{args.command}] config: " + " ".join(pairs))


def _build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(
        prog="motornoise",
        description="Evolutionary product/sigmoid-unit networks for motor acoustic quality.",
        epilog=(
            "Option precedence: command-line flags override --config file entries, "
            "which override built-in defaults.  MOTORNOISE_SEED sets the default seed."
        ),
    )
    parser.add_argument("--version", action="version", version=f"motornoise {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value file providing flag defaults")
        p.add_argument("--seed", type=int, default=_default_seed())
        p.add_argument("--threads", type=int, default=1,
                       help="worker processes for multi-run training (results identical)")

    p_gen = sub.add_parser("gen", help="generate the synthetic design dataset")
    common(p_gen)
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--noise", type=float, default=1.0,
                       help="noise scale: 1.0 = 2%% of each output span, 0 = noiseless")
    p_gen.set_defaults(func=_cmd_gen)

    p_train = sub.add_parser("train", help="evolve networks on a dataset CSV")
    common(p_train)
    p_train.add_argument("--data", required=True)
    p_train.add_argument("--basis", default="punn",
                         help="punn/product or sunn/sigmoid")
    p_train.add_argument("--mode", choices=("simple", "complex"), default="simple",
                         help="simple: 200 generations; complex: 6000")
    p_train.add_argument("--runs", type=int, default=None)
    p_train.add_argument("--pop", type=int, default=None)
    p_train.add_argument("--gens", type=int, default=None,
                         help="override the generation count implied by --mode")
    p_train.add_argument("--max-nodes", type=int, default=3)
    p_train.add_argument("--train-fraction", type=float, default=0.75)
    p_train.add_argument("--preset", choices=("desk",), default=None,
                         help="desk: runs 3, pop 100 (quick local experiments)")
    p_train.add_argument("--out-dir", default=".")
    p_train.set_defaults(func=_cmd_train)

    p_eval = sub.add_parser("eval", help="score a model file on a dataset")
    common(p_eval)
    p_eval.add_argument("--model", required=True, help="model file or 'reference'")
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--out", default=None)
    p_eval.set_defaults(func=_cmd_eval)

    p_pred = sub.add_parser("predict", help="append model predictions to input rows")
    common(p_pred)
    p_pred.add_argument("--model", required=True)
    p_pred.add_argument("--data", required=True,
                        help="CSV with the 40 input columns (outputs optional)")
    p_pred.add_argument("--out", required=True)
    p_pred.set_defaults(func=_cmd_predict)

    p_an = sub.add_parser("analyze", help="influence table and response surfaces")
    common(p_an)
    p_an.add_argument("--model", default="reference")
    p_an.add_argument("--data", required=True,
                      help="dataset used for nominal/fixed values")
    p_an.add_argument("--influence", action="store_true")
    p_an.add_argument("--surface", action="append", default=[],
                      metavar="VAR_A,VAR_B", help="may be given multiple times")
    p_an.add_argument("--grid", type=int, default=50)
    p_an.add_argument("--fixed", choices=("means", "medians"), default="means")
    p_an.add_argument("--out-dir", default=".")
    p_an.set_defaults(func=_cmd_analyze)

    p_base = sub.add_parser("baseline", help="linear baseline comparison table")
    common(p_base)
    p_base.add_argument("--data", required=True)
    p_base.add_argument("--train-fraction", type=float, default=0.75)
    p_base.add_argument("--lambda-grid", default="0.0001,0.001,0.01,0.1,1.0",
                        help="comma-separated penalties for CV selection")
    p_base.add_argument("--ratio", type=float, default=0.5,
                        help="elastic-net mixing ratio")
    p_base.add_argument("--out", default=None)
    p_base.set_defaults(func=_cmd_baseline)
    subparsers = {
        "gen": p_gen, "train": p_train, "eval": p_eval,
        "predict": p_pred, "analyze": p_an, "baseline": p_base,
    }
    return parser, subparsers


def _cmd_gen(args) -> int:
    sds = default_noise_sds() * args.noise
    data = generate(SynthConfig(seed=args.seed, noise_sds=tuple(sds)))
    header = _provenance(args) + f" | {data.provenance}"
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = out.with_name(out.name + ".tmp")
    save_dataset(data, tmp, provenance=header)
    os.replace(tmp, out)
    print(f"wrote {len(data)} patterns to {out}")
    return 0


def _cmd_train(args) -> int:
    data = load_dataset(args.data)
    train, test = split(data, args.train_fraction, args.seed)
    basis = parse_basis(args.basis)
    config = EAConfig(seed=args.seed, max_nodes=args.max_nodes).for_mode(args.mode)
    if args.preset == "desk":
        config = EAConfig(
            runs=3, population_size=100, generations=config.generations,
            seed=args.seed, max_nodes=args.max_nodes,
        )
    overrides = {}
    if args.runs is not None:
        overrides["runs"] = args.runs
    if args.pop is not None:
        overrides["population_size"] = args.pop
    if args.gens is not None:
        overrides["generations"] = args.gens
    if overrides:
        from dataclasses import replace

        config = replace(config, **overrides)
    result = run_experiment(train, test, config, basis, n_jobs=args.threads)
    best_model = result.best.model
    best_history = result.best.history
    out_dir = Path(args.out_dir)
    header = _provenance(args)
    _atomic_write(out_dir / "model.json", serialize(best_model))
    _atomic_write(out_dir / "history.csv", f"# {header}\n" + export_history(best_history))
    _atomic_write(
        out_dir / "report.txt",
        f"# {header}\n# test-set metrics over {config.runs} run(s)\n"
        + render_aggregate(result, data.schema.output_names),
    )
    print(render_aggregate(result, data.schema.output_names))
    print(f"artifacts written to {out_dir}/model.json, history.csv, report.txt")
    return 0


def _cmd_eval(args) -> int:
    model = _resolve_model(args.model)
    data = load_dataset(args.data)
    report = evaluate_model(model, data)
    text = render_report(report.metrics, links=report.links, label="Model")
    print(text, end="")
    if args.out:
        _atomic_write(Path(args.out), f"# {_provenance(args)}\n{text}")
    return 0


def _cmd_predict(args) -> int:
    model = _resolve_model(args.model)
    schema = DEFAULT_SCHEMA
    rows = []
    with open(args.data, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = None
        for record in reader:
            if not record or record[0].startswith("#"):
                continue
            if header is None:
                header = [h.strip() for h in record]
                continue
            rows.append(record)
    if header is None:
        raise SchemaError(f"{args.data}: no header row found")
    accepted = [
        {schema.input_names[i], schema.input_aliases[i]} for i in range(schema.n_inputs)
    ]
    if len(header) < schema.n_inputs or any(
        header[i] not in accepted[i] for i in range(schema.n_inputs)
    ):
        raise SchemaError("input columns must be the 40 schema variables, in order")
    try:
        X = np.array([[float(c) for c in row[: schema.n_inputs]] for row in rows])
    except ValueError as exc:
        raise ParseError(f"could not parse inputs: {exc}") from None
    preds = model.predict(X) if len(rows) else np.zeros((0, 4))
    lines = [f"# {_provenance(args)}"]
    lines.append(",".join(header[: schema.n_inputs]) + "," + ",".join(schema.output_names))
    for row, pred in zip(rows, preds):
        lines.append(
            ",".join(row[: schema.n_inputs]) + "," + ",".join(repr(float(v)) for v in pred)
        )
    _atomic_write(Path(args.out), "\n".join(lines) + "\n")
    print(f"wrote {len(rows)} prediction(s) to {args.out}")
    return 0


def _cmd_analyze(args) -> int:
    model = _resolve_model(args.model)
    data = load_dataset(args.data)
    out_dir = Path(args.out_dir)
    header = _provenance(args)
    wrote = []
    if args.influence:
        nominal = model.normalization.normalize_inputs(fixed_point(data, args.fixed))
        report = influence(model, nominal)
        _atomic_write(out_dir / "influence.csv",
                      f"# {header}\n" + export_influence(report, data.schema))
        wrote.append("influence.csv")
    for spec_str in args.surface:
        try:
            var_a, var_b = [v.strip() for v in spec_str.split(",")]
        except ValueError:
            raise ValidationError(
                f"--surface expects VAR_A,VAR_B, got {spec_str!r}"
            ) from None
        surf = surface(
            model, var_a, var_b, n_grid=args.grid,
            fixed=fixed_point(data, args.fixed), schema=data.schema,
        )
        name = f"surface_{surf.var_a}_{surf.var_b}.csv"
        note = ""
        if data.schema.resolve(var_a) in (2, 3) or data.schema.resolve(var_b) in (2, 3):
            note = "# note: integer-valued variable swept continuously (non-physical between levels)\n"
        _atomic_write(out_dir / name, f"# {header}\n{note}" + export_surface(surf))
        wrote.append(name)
    if not wrote:
        raise ValidationError("nothing to do: pass --influence and/or --surface")
    print(f"wrote {', '.join(wrote)} to {out_dir}")
    return 0


def _cmd_baseline(args) -> int:
    data = load_dataset(args.data)
    train, test = split(data, args.train_fraction, args.seed)
    spec = fit_normalizer(train)
    train_n = (spec.normalize_inputs(train.X), spec.normalize_outputs(train.Y))
    test_Xn = spec.normalize_inputs(test.X)
    grid = [float(v) for v in args.lambda_grid.split(",") if v.strip()]

    models = {"LinearReg": fit_linear(train_n)}
    lam_ridge = select_lambda(train_n, "ridge", grid, seed=args.seed)
    models["Ridge"] = fit_ridge(train_n, lam_ridge)
    lam_lasso = select_lambda(train_n, "lasso", grid, seed=args.seed)
    models["Lasso"] = fit_lasso(train_n, lam_lasso)
    lam_enet = select_lambda(train_n, "elastic_net", grid, ratio=args.ratio, seed=args.seed)
    models["ElasticNet"] = fit_elastic_net(train_n, lam_enet, args.ratio)

    from .metrics import compute_report, render_rows

    rows = []
    for name, model in models.items():
        preds = spec.denormalize_outputs(model.predict(test_Xn))
        rows.append((name, compute_report(preds, test.Y), model.links))
    text = render_rows(rows, data.schema.output_names)
    lam_note = (
        f"selected penalties: ridge={lam_ridge:g} lasso={lam_lasso:g} "
        f"elastic_net={lam_enet:g} (ratio={args.ratio:g}); "
        f"lasso shutdown threshold={float(lambda_max(train_n).max()):g}"
    )
    print(text + lam_note)
    if args.out:
        _atomic_write(Path(args.out), f"# {_provenance(args)}\n{text}{lam_note}\n")
    return 0


def _apply_config_file(subparser: argparse.ArgumentParser, path: str) -> None:
    """Use key=value entries from ``path`` as flag defaults (flags still win)."""
    file_values = _load_config_file(path)
    coerced = {}
    for action in subparser._actions:
        if action.dest in file_values:
            raw = file_values.pop(action.dest)
            if isinstance(action, argparse._StoreTrueAction):
                coerced[action.dest] = raw.lower() in ("1", "true", "yes")
            elif action.type is not None:
                coerced[action.dest] = action.type(raw)
            else:
                coerced[action.dest] = raw
    if file_values:
        raise ValidationError(
            f"unknown config key(s): {', '.join(sorted(file_values))}"
        )
    subparser.set_defaults(**coerced)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = _build_parser()
    try:
        args, _ = parser.parse_known_args(argv)
        if getattr(args, "config", None):
            _apply_config_file(subparsers[args.command], args.config)
            args = parser.parse_args(argv)
        args._raw_argv = ["motornoise"] + argv
        _echo_config(args)
        return args.func(args)
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MotorNoiseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
