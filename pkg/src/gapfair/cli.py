"""Command line pipeline: ingest, train, evaluate, sweep, pareto, proxy, report.

One JSON configuration document drives every command; flags override
the file, the file overrides built-in defaults, and unknown keys are
rejected rather than ignored. All artifacts are written atomically
(temp file + rename) and are byte-identical across reruns except for
an explicit top-level "timestamp" field in JSON documents.

Exit codes: 0 success; 2 input, schema, or configuration errors;
3 analysis-degenerate data (empty cohort, single-class labels, empty
Pareto front, and similar); 1 anything else.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import os
import sys
import tempfile
from datetime import datetime, timezone

import numpy as np

from . import analysis, svgplot
from . import trainer as trainer_mod
from .dataset import (
    CohortPolicy,
    EncodingStats,
    FeatureMatrix,
    FeatureSchema,
    RecordTable,
    cohort_summary,
    encode_features,
    filter_cohort,
    load_records,
    split_table,
)
from .errors import (
    ArityError,
    ConfigError,
    DegenerateGroupError,
    DegenerateLabelsError,
    DimensionError,
    EmptyCohortError,
    EmptyFrontError,
    FormatError,
    GapfairError,
    SchemaError,
    StratificationError,
)
from .group_metrics import FairnessNotion
from .model import Architecture, params_from_json_dict, params_to_json_dict
from .trainer import TrainConfig

DEFAULT_CONFIG: dict = {
    "data": {"csv": None},
    "output_dir": "out",
    "cohort": {
        "age_min": 18,
        "age_max": 40,
        "allowed_races": ["African-American", "Caucasian"],
        "group_attribute": "race",
        "apply_screening_window": True,
    },
    # null feature lists mean "derive from the cohort policy".
    "features": {"numeric": None, "categorical": None},
    "split": {"test_fraction": 0.2, "seed": 0},
    "architecture": {"hidden_layers": [16], "activation": "relu"},
    "train": {
        "loss": "gap",
        "lambda": 1.0,
        "learning_rate": 0.01,
        "epochs": 200,
        "batch_size": 128,
        "optimizer": "adam",
        "seed": 0,
        "restarts": 10,
        "validation_fraction": 0.2,
        "oe_mode": "batch",
    },
    "sweep": {
        "lambdas": list(analysis.DEFAULT_LAMBDAS),
        "seeds": list(analysis.DEFAULT_SEEDS),
    },
    "pareto": {
        "notions": [notion.label for notion in FairnessNotion],
        "tolerance": 0.0,
        "log_ratio": False,
    },
    "proxy": {
        "features": ["age", "priors_count"],
        "partitions": ["race", "outcome"],
    },
}

_INPUT_ERRORS = (
    FormatError, SchemaError, ConfigError, FileNotFoundError,
    IsADirectoryError, NotADirectoryError, PermissionError, ValueError,
)
_DEGENERATE_ERRORS = (
    EmptyCohortError, StratificationError, DegenerateLabelsError,
    DegenerateGroupError, EmptyFrontError, ArityError,
)


# ---------------------------------------------------------------------------
# Configuration handling

def _merge_config(base: dict, override, prefix: str = "") -> None:
    if not isinstance(override, dict):
        raise ConfigError(f"config section {prefix or '<root>'} must be an object")
    for key, value in override.items():
        if key not in base:
            raise ConfigError(f"unknown config key {prefix + key!r}")
        if isinstance(base[key], dict):
            _merge_config(base[key], value, prefix + key + ".")
        else:
            base[key] = value


def load_config(path: str | None) -> dict:
    """Built-in defaults, overlaid with the config file when given."""
    config = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        with open(path, encoding="utf-8") as handle:
            try:
                loaded = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
        _merge_config(config, loaded)
    return config


def _make_policy(config: dict) -> CohortPolicy:
    section = config["cohort"]
    try:
        return CohortPolicy(
            age_min=int(section["age_min"]),
            age_max=int(section["age_max"]),
            allowed_races=tuple(section["allowed_races"]),
            group_attribute=section["group_attribute"],
            apply_screening_window=bool(section["apply_screening_window"]),
        )
    except SchemaError as exc:
        raise ConfigError(f"cohort section invalid: {exc}") from exc


def _make_schema(config: dict, policy: CohortPolicy) -> FeatureSchema:
    section = config["features"]
    base = FeatureSchema.for_policy(policy)
    numeric = section["numeric"]
    categorical = section["categorical"]
    try:
        return FeatureSchema(
            numeric=base.numeric if numeric is None else tuple(numeric),
            categorical=(base.categorical if categorical is None
                         else tuple(categorical)),
            group_attribute=policy.group_attribute,
            group_values=policy.group_values(),
        )
    except SchemaError as exc:
        raise ConfigError(f"features section invalid: {exc}") from exc


def _make_train_config(config: dict, args: argparse.Namespace) -> TrainConfig:
    section = dict(config["train"])
    overrides = {
        "loss": getattr(args, "loss", None),
        "lambda": getattr(args, "lam", None),
        "learning_rate": getattr(args, "learning_rate", None),
        "epochs": getattr(args, "epochs", None),
        "batch_size": getattr(args, "batch_size", None),
        "optimizer": getattr(args, "optimizer", None),
        "seed": getattr(args, "seed", None),
        "restarts": getattr(args, "restarts", None),
    }
    for key, value in overrides.items():
        if value is not None:
            section[key] = value
    return TrainConfig(
        loss=section["loss"],
        lam=float(section["lambda"]),
        learning_rate=float(section["learning_rate"]),
        epochs=int(section["epochs"]),
        batch_size=int(section["batch_size"]),
        optimizer=section["optimizer"],
        seed=int(section["seed"]),
        restarts=int(section["restarts"]),
        validation_fraction=float(section["validation_fraction"]),
        oe_mode=section["oe_mode"],
    )


def _make_architecture(config: dict, input_dim: int) -> Architecture:
    section = config["architecture"]
    return Architecture(
        input_dim=input_dim,
        hidden_layers=tuple(int(h) for h in section["hidden_layers"]),
        activation=section["activation"],
    )


# ---------------------------------------------------------------------------
# Atomic artifact I/O

def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def _write_bytes_atomic(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_text_atomic(path: str, text: str) -> None:
    _write_bytes_atomic(path, text.encode("utf-8"))


def write_json_atomic(path: str, payload: dict, timestamp: bool = True) -> None:
    document = {"timestamp": _timestamp(), **payload} if timestamp else payload
    write_text_atomic(path, json.dumps(document, indent=2) + "\n")


def write_npy_atomic(path: str, array: np.ndarray) -> None:
    buffer = io.BytesIO()
    np.save(buffer, array)
    _write_bytes_atomic(path, buffer.getvalue())


def _read_json(path: str) -> dict:
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


_COHORT_CSV_HEADER = (
    "id", "age", "sex", "race", "priors_count", "c_charge_degree",
    "juv_fel_count", "juv_misd_count", "juv_other_count",
    "days_b_screening_arrest", "two_year_recid", "decile_score",
)


def _write_cohort_csv(path: str, table: RecordTable) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(_COHORT_CSV_HEADER)
    for r in table:
        writer.writerow([
            "" if r.id is None else r.id,
            r.age, r.sex, r.race, r.priors_count, r.charge_degree,
            r.juv_fel_count, r.juv_misd_count, r.juv_other_count,
            "" if r.days_b_screening_arrest is None else r.days_b_screening_arrest,
            r.two_year_recid, r.decile_score,
        ])
    write_text_atomic(path, buffer.getvalue())


def _save_split(out_dir: str, name: str, matrix: FeatureMatrix) -> None:
    write_npy_atomic(os.path.join(out_dir, f"{name}_values.npy"), matrix.values)
    write_npy_atomic(os.path.join(out_dir, f"{name}_labels.npy"), matrix.labels)
    write_npy_atomic(os.path.join(out_dir, f"{name}_groups.npy"), matrix.group_ids)


def _load_split(out_dir: str, name: str) -> FeatureMatrix:
    encoding_path = os.path.join(out_dir, "encoding.json")
    if not os.path.exists(encoding_path):
        raise FileNotFoundError(
            f"{encoding_path} not found; run `gapfair ingest` first"
        )
    encoding = _read_json(encoding_path)
    parts = {}
    for kind in ("values", "labels", "groups"):
        path = os.path.join(out_dir, f"{name}_{kind}.npy")
        if not os.path.exists(path):
            raise FileNotFoundError(
                f"{path} not found; run `gapfair ingest` first"
            )
        parts[kind] = np.load(path)
    return FeatureMatrix(
        values=parts["values"],
        column_names=tuple(encoding["column_names"]),
        labels=parts["labels"],
        group_ids=parts["groups"],
        group_names=tuple(encoding["group_names"]),
    )


# ---------------------------------------------------------------------------
# Commands

def cmd_ingest(args: argparse.Namespace, config: dict, out_dir: str) -> int:
    data_path = args.data or config["data"]["csv"]
    if not data_path:
        raise ConfigError("no input CSV: pass --data or set data.csv in config")

    loaded = load_records(data_path)
    print(f"read {loaded.rows_read} rows from {data_path} "
          f"({loaded.rows_dropped} dropped while parsing)")

    policy = _make_policy(config)
    filtered = filter_cohort(loaded.table, policy)
    for stage, count in filtered.stages:
        print(f"  after {stage}: {count}")

    schema = _make_schema(config, policy)
    split_cfg = config["split"]
    train_table, test_table = split_table(
        filtered.table, schema,
        test_fraction=float(split_cfg["test_fraction"]),
        seed=int(split_cfg["seed"]),
    )
    train_enc = encode_features(train_table, schema)
    test_enc = encode_features(test_table, schema, stats=train_enc.stats)
    print(f"split: train={train_enc.matrix.n_rows} rows, "
          f"test={test_enc.matrix.n_rows} rows, "
          f"{train_enc.matrix.n_cols} feature columns")

    _save_split(out_dir, "train", train_enc.matrix)
    _save_split(out_dir, "test", test_enc.matrix)
    write_json_atomic(os.path.join(out_dir, "encoding.json"), {
        "column_names": list(train_enc.matrix.column_names),
        "group_names": list(train_enc.matrix.group_names),
        "group_attribute": schema.group_attribute,
        "stats": train_enc.stats.to_json_dict(),
        "unseen_levels_in_test": test_enc.unseen_levels,
    })
    _write_cohort_csv(os.path.join(out_dir, "cohort.csv"), filtered.table)
    write_json_atomic(os.path.join(out_dir, "cohort.json"), {
        "source": str(data_path),
        "load": {
            "rows_read": loaded.rows_read,
            "rows_dropped": loaded.rows_dropped,
            "drop_reasons": dict(sorted(loaded.drop_reasons.items())),
        },
        "stages": [[name, count] for name, count in filtered.stages],
        "summary": cohort_summary(filtered.table),
        "split": {
            "test_fraction": float(split_cfg["test_fraction"]),
            "seed": int(split_cfg["seed"]),
            "train_rows": train_enc.matrix.n_rows,
            "test_rows": test_enc.matrix.n_rows,
        },
    })
    return 0


def _confusion_json(result: trainer_mod.EvalResult) -> dict:
    names = result.report.group_names
    return {names[g]: result.confusion.group(g)
            for g in range(result.confusion.n_groups)}


def _write_report(out_dir: str, result: trainer_mod.EvalResult,
                  train_config: TrainConfig) -> None:
    write_json_atomic(os.path.join(out_dir, "report.json"), {
        "loss": train_config.loss,
        "lambda": train_config.lam,
        "seed": train_config.seed,
        "report": result.report.to_json_dict(),
        "confusion": _confusion_json(result),
    })


def cmd_train(args: argparse.Namespace, config: dict, out_dir: str) -> int:
    train_matrix = _load_split(out_dir, "train")
    test_matrix = _load_split(out_dir, "test")
    train_config = _make_train_config(config, args)
    arch = _make_architecture(config, train_matrix.n_cols)

    result = trainer_mod.multi_restart(train_matrix, train_config, arch)
    selected = result.selection.selected_seed
    history = next(h for h in result.histories if h.seed == selected)

    write_json_atomic(os.path.join(out_dir, "model.json"),
                      params_to_json_dict(result.params))
    write_json_atomic(os.path.join(out_dir, "selection.json"),
                      result.selection.to_json_dict())
    write_text_atomic(os.path.join(out_dir, "history.jsonl"),
                      history.to_jsonl())

    evaluation = trainer_mod.evaluate(result.params, test_matrix)
    _write_report(out_dir, evaluation, train_config)
    print(f"selected seed {selected} "
          f"(rule: {result.selection.rule})")
    print(f"test accuracy {evaluation.report.accuracy:.4f}, "
          f"AD {evaluation.report.accuracy_difference:+.4f}")
    return 0


def cmd_evaluate(args: argparse.Namespace, config: dict, out_dir: str) -> int:
    model_path = os.path.join(out_dir, "model.json")
    if not os.path.exists(model_path):
        raise FileNotFoundError(
            f"{model_path} not found; run `gapfair train` first"
        )
    params = params_from_json_dict(_read_json(model_path))
    test_matrix = _load_split(out_dir, "test")
    train_config = _make_train_config(config, args)
    evaluation = trainer_mod.evaluate(params, test_matrix)
    _write_report(out_dir, evaluation, train_config)
    print(f"test accuracy {evaluation.report.accuracy:.4f}, "
          f"AD {evaluation.report.accuracy_difference:+.4f}")
    return 0


def _parse_float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip() != ""]


def _parse_int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip() != ""]


def cmd_sweep(args: argparse.Namespace, config: dict, out_dir: str) -> int:
    train_matrix = _load_split(out_dir, "train")
    test_matrix = _load_split(out_dir, "test")
    base_config = _make_train_config(args=args, config=config)
    arch = _make_architecture(config, train_matrix.n_cols)

    lambdas = (config["sweep"]["lambdas"] if args.lambdas is None
               else _parse_float_list(args.lambdas))
    seeds = (config["sweep"]["seeds"] if args.seeds is None
             else _parse_int_list(args.seeds))

    points = analysis.lambda_sweep(train_matrix, test_matrix, base_config,
                                   lambdas=lambdas, seeds=seeds, arch=arch)
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(analysis.SWEEP_CSV_COLUMNS)
    for point in points:
        writer.writerow(point.to_csv_row())
    write_text_atomic(os.path.join(out_dir, "sweep.csv"), buffer.getvalue())
    print(f"swept {len(lambdas)} lambda value(s) x {len(seeds)} seed(s): "
          f"{len(points)} points -> sweep.csv")
    return 0


def _read_sweep_csv(path: str) -> list[analysis.TradeoffPoint]:
    if not os.path.exists(path):
        raise FileNotFoundError(f"{path} not found; run `gapfair sweep` first")
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        missing = set(analysis.SWEEP_CSV_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise SchemaError(f"{path}: missing sweep columns {sorted(missing)}")
        return [analysis.TradeoffPoint.from_csv_row(row) for row in reader]


def cmd_pareto(args: argparse.Namespace, config: dict, out_dir: str) -> int:
    points = _read_sweep_csv(os.path.join(out_dir, "sweep.csv"))
    section = config["pareto"]
    labels = (section["notions"] if args.notions is None
              else [part.strip() for part in args.notions.split(",") if part.strip()])
    try:
        notions = [FairnessNotion.from_label(label) for label in labels]
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    tolerance = (float(section["tolerance"]) if args.tolerance is None
                 else args.tolerance)
    log_ratio = (bool(section["log_ratio"]) if args.log_ratio is None
                 else args.log_ratio)

    baselines = {}
    for notion in notions:
        front = analysis.pareto_front(points, notion, log_ratio=log_ratio)
        baseline = analysis.fairness_baseline(front, tolerance=tolerance)
        baselines[notion.label] = baseline.to_json_dict()
        write_json_atomic(
            os.path.join(out_dir, f"front_{notion.label}.json"),
            {"baseline": baseline.to_json_dict(), **front.to_json_dict()},
        )

        cloud = []
        for point in points:
            u = analysis.unfairness(point.fairness[notion], notion, log_ratio)
            if u is not None:
                cloud.append((u, point.accuracy))
        front_xy = list(zip(front.unfairness,
                            [p.accuracy for p in front.points]))
        svg = svgplot.scatter_svg(
            cloud, front_xy,
            title=f"{notion.display_name} ({notion.label})",
            x_label=f"unfairness |{notion.label} value vs ideal|",
            y_label="accuracy",
        )
        write_text_atomic(
            os.path.join(out_dir, f"front_{notion.label}.svg"), svg
        )
        flag = " (extrapolated)" if baseline.extrapolated else ""
        print(f"{notion.label}: front size {len(front)}, "
              f"baseline accuracy {baseline.accuracy:.4f}{flag}")

    write_json_atomic(os.path.join(out_dir, "baselines.json"), {
        "tolerance": tolerance,
        "log_ratio": log_ratio,
        "baselines": baselines,
    })
    return 0


def _safe_name(text: str) -> str:
    return "".join(c if c.isalnum() or c in "-_" else "-" for c in text)


def cmd_proxy(args: argparse.Namespace, config: dict, out_dir: str) -> int:
    cohort_path = os.path.join(out_dir, "cohort.csv")
    if not os.path.exists(cohort_path):
        raise FileNotFoundError(
            f"{cohort_path} not found; run `gapfair ingest` first"
        )
    table = load_records(cohort_path).table
    section = config["proxy"]
    features = (section["features"] if args.features is None
                else [part.strip() for part in args.features.split(",") if part.strip()])
    partitions = (section["partitions"] if args.partitions is None
                  else [part.strip() for part in args.partitions.split(",") if part.strip()])

    try:
        report = analysis.proxy_report(table, features=features,
                                       partitions=partitions)
    except TypeError as exc:
        # A non-numeric feature name is a configuration mistake, not a
        # degenerate-data condition.
        raise ConfigError(str(exc)) from exc
    write_json_atomic(os.path.join(out_dir, "proxy.json"),
                      report.to_json_dict())
    n_violins = 0
    for feature, by_partition in report.violins.items():
        for partition, sides in by_partition.items():
            for side, summary in sides.items():
                name = (f"violin_{_safe_name(feature)}_"
                        f"{_safe_name(partition)}_{_safe_name(side)}.svg")
                write_text_atomic(os.path.join(out_dir, name),
                                  svgplot.violin_svg(summary))
                n_violins += 1
    for feature in report.features:
        for pair, score in report.proxy_scores[feature].items():
            print(f"{feature}: proxy score {pair} = {score:.6f}")
    print(f"wrote proxy.json and {n_violins} violin SVG(s)")
    return 0


def cmd_report(args: argparse.Namespace, config: dict, out_dir: str) -> int:
    artifact_names = ["cohort.json", "encoding.json", "report.json",
                      "selection.json", "baselines.json", "proxy.json"]
    artifact_names += [f"front_{notion.label}.json"
                       for notion in FairnessNotion]
    bundle: dict = {}
    missing: list[str] = []
    for name in artifact_names:
        path = os.path.join(out_dir, name)
        if os.path.exists(path):
            bundle[name] = _read_json(path)
        else:
            missing.append(name)
    write_json_atomic(os.path.join(out_dir, "report_bundle.json"), {
        "artifacts": bundle,
        "missing": missing,
    })
    print(f"bundled {len(bundle)} artifact(s) into report_bundle.json "
          f"({len(missing)} missing)")
    return 0


# ---------------------------------------------------------------------------
# Argument parsing and dispatch

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapfair",
        description="Fairness-aware recidivism classification pipeline: "
                    "group accuracy parity training and trade-off analysis.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", default=None,
                        help="JSON configuration file (default: built-in defaults)")
    common.add_argument("--out", metavar="DIR", default=None,
                        help="artifact directory (default: config output_dir, 'out')")

    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser(
        "ingest", parents=[common],
        help="load, filter, encode, and split the scores CSV")
    p_ingest.add_argument("--data", metavar="PATH", default=None,
                          help="input CSV (default: config data.csv)")

    train_flags = argparse.ArgumentParser(add_help=False)
    train_flags.add_argument("--loss", choices=trainer_mod.LOSSES, default=None,
                             help="training loss (default: gap)")
    train_flags.add_argument("--lambda", dest="lam", type=float, default=None,
                             help="gap penalty weight (default: 1.0)")
    train_flags.add_argument("--seed", type=int, default=None,
                             help="base seed (default: 0)")
    train_flags.add_argument("--epochs", type=int, default=None,
                             help="training epochs (default: 200)")
    train_flags.add_argument("--learning-rate", type=float, default=None,
                             help="optimizer step size (default: 0.01)")
    train_flags.add_argument("--batch-size", type=int, default=None,
                             help="mini-batch size (default: 128)")
    train_flags.add_argument("--optimizer", choices=trainer_mod.OPTIMIZERS,
                             default=None, help="optimizer (default: adam)")
    train_flags.add_argument("--restarts", type=int, default=None,
                             help="multi-restart count (default: 10)")

    sub.add_parser("train", parents=[common, train_flags],
                   help="multi-restart training plus test-set report")
    sub.add_parser("evaluate", parents=[common, train_flags],
                   help="re-evaluate the saved model on the test split")

    p_sweep = sub.add_parser("sweep", parents=[common, train_flags],
                             help="lambda sweep over seeds, one CSV row per run")
    p_sweep.add_argument("--lambdas", metavar="L1,L2,...", default=None,
                         help="lambda grid (default: 0,0.01,0.03,0.1,0.3,1,3,10)")
    p_sweep.add_argument("--seeds", metavar="S1,S2,...", default=None,
                         help="seed grid (default: 0..9)")

    p_pareto = sub.add_parser("pareto", parents=[common],
                              help="extract fronts and baselines from sweep.csv")
    p_pareto.add_argument("--notions", metavar="f1,f6,...", default=None,
                          help="notion labels (default: all sixteen)")
    p_pareto.add_argument("--tolerance", type=float, default=None,
                          help="unfairness tolerance before flagging the "
                               "baseline extrapolated (default: 0.0)")
    p_pareto.add_argument("--log-ratio", dest="log_ratio",
                          action="store_const", const=True, default=None,
                          help="scalarize ratio notions as |log(value)| "
                               "(default: off)")

    p_proxy = sub.add_parser("proxy", parents=[common],
                             help="violin and distance proxy analysis of the cohort")
    p_proxy.add_argument("--features", metavar="age,priors_count", default=None,
                         help="numeric features (default: age,priors_count)")
    p_proxy.add_argument("--partitions", metavar="race,outcome", default=None,
                         help="binary partitions (default: race,outcome)")

    sub.add_parser("report", parents=[common],
                   help="bundle all JSON artifacts into one document")
    return parser


_COMMANDS = {
    "ingest": cmd_ingest,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
    "pareto": cmd_pareto,
    "proxy": cmd_proxy,
    "report": cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        out_dir = args.out or config["output_dir"]
        os.makedirs(out_dir, exist_ok=True)
        return _COMMANDS[args.command](args, config, out_dir)
    except _DEGENERATE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GapfairError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - last-resort guard
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
