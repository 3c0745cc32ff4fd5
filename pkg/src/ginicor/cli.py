"""Command-line front end.

Subcommands: ``gcor``, ``dcor``, ``r2``, ``ci``, ``test``, ``screen``,
``oracle {exp,normal-location,normal-scale}`` and
``sim {coverage,power,timing}``. Input is a UTF-8 CSV with a header row;
one column is the class label, the rest (or an explicit ``--features``
selection) are numeric features.

Output is a single JSON document ``{"inputs": ..., "result": ...,
"meta": ...}`` or, with ``--format csv``, a commented JSON header line plus
a table. Numbers are serialized at 12 significant digits. Stochastic
commands echo their resolved seed so any run can be reproduced exactly.

Exit codes: 0 success, 1 usage (bad arguments or parameter ranges),
2 data (unreadable file, malformed CSV, unknown column, invalid dataset),
3 numeric (degenerate data for the requested statistic).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .correlation import gcor, pearson_r2, screen_features
from .data import (
    DataValidationError,
    DegenerateDataError,
    LabeledDataset,
    build_dataset,
)
from .distance import dcov_plugin, dcov_unbiased
from .inference import jackknife_ci, permutation_test
from .oracles import exp_mixture_corrs, exp_mixture_dcov_xx, normal_location_corrs, normal_scale_gcor
from .simulate import (
    MixtureSpec,
    cauchy_mixture,
    coverage_experiment,
    exponential_mixture,
    normal_location_mixture,
    normal_scale_mixture,
    power_experiment,
    timing_benchmark,
)

__all__ = ["main", "read_csv", "run"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class CliError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code
        self.message = message


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; this CLI reserves 2 for
    # data problems, so usage errors are rerouted to exit code 1
    def error(self, message):
        raise CliError(EXIT_USAGE, message)


# ---------------------------------------------------------------------------
# CSV ingestion


def read_csv(path, label, features=None) -> tuple[LabeledDataset, list, str]:
    """Read a header CSV into a LabeledDataset.

    Parameters
    ----------
    path : str
        CSV file with a header row, comma-delimited, UTF-8.
    label : str
        Label column, by header name or integer position.
    features : sequence of str, optional
        Feature columns (names or integer positions), in the declared
        order; defaults to every non-label column.

    Returns
    -------
    (dataset, feature_names, label_name)
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise CliError(EXIT_DATA, f"{path}: empty file, a header row is required")
            rows = list(reader)
    except OSError as exc:
        raise CliError(EXIT_DATA, f"cannot read {path}: {exc.strerror or exc}")

    def resolve(selector) -> int:
        sel = str(selector)
        if sel in header:
            return header.index(sel)
        try:
            idx = int(sel)
        except ValueError:
            raise CliError(EXIT_DATA, f"unknown column {sel!r} (header: {', '.join(header)})")
        if not 0 <= idx < len(header):
            raise CliError(EXIT_DATA, f"column index {idx} out of range 0..{len(header) - 1}")
        return idx

    label_idx = resolve(label)
    if features is None:
        feature_idx = [j for j in range(len(header)) if j != label_idx]
    else:
        feature_idx = [resolve(f) for f in features]
    if not feature_idx:
        raise CliError(EXIT_DATA, "no feature columns selected")
    if not rows:
        raise CliError(EXIT_DATA, f"{path}: no data rows")

    matrix = np.empty((len(rows), len(feature_idx)))
    labels = []
    for i, row in enumerate(rows, start=1):
        if len(row) != len(header):
            raise CliError(
                EXIT_DATA, f"row {i}: expected {len(header)} fields, found {len(row)}"
            )
        for out_j, j in enumerate(feature_idx):
            cell = row[j]
            try:
                matrix[i - 1, out_j] = float(cell)
            except ValueError:
                raise CliError(
                    EXIT_DATA,
                    f"row {i}, column {header[j]}: cannot parse {cell!r} as a number",
                )
        labels.append(row[label_idx])
    dataset = build_dataset(matrix, labels)
    return dataset, [header[j] for j in feature_idx], header[label_idx]


# ---------------------------------------------------------------------------
# serialization helpers


def _twelve(value: float) -> float:
    # round-trip through 12 significant digits so JSON and CSV agree
    return float(format(float(value), ".12g"))


def _jsonable(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, (float, np.floating)):
        return _twelve(float(obj))
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _format_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _flatten(obj, prefix="", out=None):
    out = [] if out is None else out
    if isinstance(obj, dict):
        for key, value in obj.items():
            _flatten(value, f"{prefix}.{key}" if prefix else str(key), out)
    elif isinstance(obj, list):
        for i, value in enumerate(obj):
            _flatten(value, f"{prefix}[{i}]", out)
    else:
        out.append((prefix, _format_value(obj)))
    return out


def _emit(args, inputs: dict, result: dict, table=None, stream=None) -> None:
    inputs = _jsonable(inputs)
    result = _jsonable(result)
    meta = {"version": __version__}
    if args.format == "json":
        doc = {"inputs": inputs, "result": result, "meta": meta}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        buf.write("# " + json.dumps({"inputs": inputs, "meta": meta}, sort_keys=True) + "\n")
        if table is not None:
            columns, rows = table
            buf.write(",".join(columns) + "\n")
            for row in rows:
                buf.write(",".join(_format_value(_jsonable(row[c])) for c in columns) + "\n")
        else:
            buf.write("key,value\n")
            for key, value in _flatten(result):
                buf.write(f"{key},{value}\n")
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)


# ---------------------------------------------------------------------------
# argument validation helpers (usage errors, exit code 1)


def _check_range(value, name, low=None, high=None, low_open=True, high_open=True):
    v = float(value)
    if low is not None and (v <= low if low_open else v < low):
        raise CliError(EXIT_USAGE, f"--{name} out of range: {value}")
    if high is not None and (v >= high if high_open else v > high):
        raise CliError(EXIT_USAGE, f"--{name} out of range: {value}")
    return v


def _check_alpha_arg(alpha) -> float:
    return _check_range(alpha, "alpha", low=0.0, high=2.0, high_open=False)


def _check_positive_int(value, name) -> int:
    v = int(value)
    if v < 1:
        raise CliError(EXIT_USAGE, f"--{name} must be a positive integer, got {value}")
    return v


def _resolve_cli_seed(seed) -> int:
    if seed is None:
        return int.from_bytes(os.urandom(8), "big")
    if seed < 0:
        raise CliError(EXIT_USAGE, f"--seed must be nonnegative, got {seed}")
    return int(seed)


def _parse_number(token: str) -> float:
    token = token.strip()
    if "/" in token:
        num, den = token.split("/", 1)
        return float(num) / float(den)
    return float(token)


def _parse_design(text: str) -> MixtureSpec:
    fields = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise CliError(EXIT_USAGE, f"design field {part!r} is not key=value")
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    family = fields.pop("family", None)
    if family is None:
        raise CliError(EXIT_USAGE, "design needs a family= field")
    try:
        weights = [_parse_number(t) for t in fields.pop("weights").split(":")]
        params = [_parse_number(t) for t in fields.pop("params").split(":")]
    except KeyError as exc:
        raise CliError(EXIT_USAGE, f"design needs a {exc.args[0]}= field")
    except ValueError:
        raise CliError(EXIT_USAGE, f"cannot parse numbers in design {text!r}")
    try:
        if family == "exp":
            spec = exponential_mixture(weights, params)
        elif family == "normal-location":
            spec = normal_location_mixture(weights, params, sd=_parse_number(fields.pop("sd", "1")))
        elif family == "normal-scale":
            spec = normal_scale_mixture(weights, params, mean=_parse_number(fields.pop("mean", "0")))
        elif family == "cauchy":
            spec = cauchy_mixture(weights, params, scale=_parse_number(fields.pop("scale", "1")))
        else:
            raise CliError(EXIT_USAGE, f"unknown design family {family!r}")
    except DataValidationError as exc:
        raise CliError(EXIT_USAGE, f"invalid design {text!r}: {exc}")
    if fields:
        raise CliError(EXIT_USAGE, f"unknown design fields: {sorted(fields)}")
    return spec


def _split_features(text):
    return [t.strip() for t in text.split(",") if t.strip()] if text else None


# ---------------------------------------------------------------------------
# subcommand handlers


def _data_inputs(args, feature_names, label_name) -> dict:
    return {
        "data": args.data,
        "label": label_name,
        "features": feature_names,
        "format": args.format,
        "threads": args.threads,
    }


def _cmd_gcor(args, stream):
    alpha = _check_alpha_arg(args.alpha)
    ds, feature_names, label_name = read_csv(args.data, args.label, _split_features(args.features))
    report = gcor(ds, alpha=alpha, kind=args.kind)
    inputs = _data_inputs(args, feature_names, label_name)
    inputs.update({"subcommand": "gcor", "alpha": alpha, "kind": args.kind})
    result = {
        "estimate": report.estimate,
        "covariance": report.covariance,
        "total_gmd": report.total_gmd,
        "per_group_gmd": report.per_group_gmd,
        "proportions": report.proportions,
        "levels": [str(level) for level in ds.levels],
        "alpha": report.alpha,
        "kind": report.kind,
    }
    _emit(args, inputs, result, stream=stream)


def _cmd_dcor(args, stream):
    alpha = _check_alpha_arg(args.alpha)
    ds, feature_names, label_name = read_csv(args.data, args.label, _split_features(args.features))
    report = dcov_unbiased(ds, alpha) if args.flavor == "unbiased" else dcov_plugin(ds, alpha)
    inputs = _data_inputs(args, feature_names, label_name)
    inputs.update({"subcommand": "dcor", "alpha": alpha, "flavor": args.flavor})
    result = {
        "dcov_xy": report.dcov_xy,
        "dcov_xx": report.dcov_xx,
        "dcov_yy": report.dcov_yy,
        "dcor": report.dcor,
        "dcor_defined": report.dcor_defined,
        "alpha": report.alpha,
        "flavor": report.flavor,
    }
    _emit(args, inputs, result, stream=stream)


def _cmd_r2(args, stream):
    ds, feature_names, label_name = read_csv(args.data, args.label, _split_features(args.features))
    value = pearson_r2(ds)
    inputs = _data_inputs(args, feature_names, label_name)
    inputs.update({"subcommand": "r2"})
    _emit(args, inputs, {"r2": value}, stream=stream)


def _cmd_ci(args, stream):
    alpha = _check_alpha_arg(args.alpha)
    level = _check_range(args.level, "level", low=0.0, high=1.0)
    ds, feature_names, label_name = read_csv(args.data, args.label, _split_features(args.features))
    interval = jackknife_ci(ds, alpha=alpha, kind=args.kind, level=level)
    inputs = _data_inputs(args, feature_names, label_name)
    inputs.update({"subcommand": "ci", "alpha": alpha, "kind": args.kind, "level": level})
    result = {
        "estimate": interval.estimate,
        "se": interval.se,
        "level": interval.level,
        "lower": interval.lower,
        "upper": interval.upper,
        "n": ds.n_observations,
    }
    _emit(args, inputs, result, stream=stream)


def _cmd_test(args, stream):
    alpha = _check_alpha_arg(args.alpha)
    gamma = _check_range(args.gamma, "gamma", low=0.0, high=1.0)
    m = _check_positive_int(args.m, "m")
    seed = _resolve_cli_seed(args.seed)
    if args.rho0 is not None and args.rho0 <= 0.0:
        raise CliError(EXIT_USAGE, f"--rho0 must be positive, got {args.rho0}")
    ds, feature_names, label_name = read_csv(args.data, args.label, _split_features(args.features))
    result_obj = permutation_test(
        ds,
        alpha=alpha,
        statistic=args.statistic,
        n_permutations=m,
        gamma=gamma,
        seed=seed,
        rho0=args.rho0,
    )
    inputs = _data_inputs(args, feature_names, label_name)
    inputs.update(
        {
            "subcommand": "test",
            "alpha": alpha,
            "statistic": result_obj.statistic,
            "m": m,
            "gamma": gamma,
            "seed": seed,
            "rho0": args.rho0,
        }
    )
    result = {
        "observed": result_obj.observed,
        "p_value": result_obj.p_value,
        "critical_value": result_obj.critical_value,
        "gamma": result_obj.gamma,
        "statistic": result_obj.statistic,
        "n_permutations": m,
        "replicates": result_obj.replicates,
    }
    if result_obj.power is not None:
        result["power"] = result_obj.power
    _emit(args, inputs, result, stream=stream)


def _cmd_screen(args, stream):
    alpha = _check_alpha_arg(args.alpha)
    ds, feature_names, label_name = read_csv(args.data, args.label, _split_features(args.features))
    top = args.top if args.top is not None else ds.n_features
    if not 1 <= top <= ds.n_features:
        raise CliError(EXIT_USAGE, f"--top must be in 1..{ds.n_features}, got {top}")
    ranking = screen_features(ds, top=top, alpha=alpha)
    seconds = {}
    if alpha == 1.0:
        # measure the per-feature fast path (one column, sorted GMDs)
        for entry in ranking:
            column_ds = build_dataset(ds.column(entry.index), ds.labels)
            start = time.perf_counter()
            try:
                gcor(column_ds, alpha=1.0, kind="v")
            except DegenerateDataError:
                continue
            seconds[entry.index] = time.perf_counter() - start
    rows = []
    for entry in ranking:
        row = {
            "feature": feature_names[entry.index],
            "index": entry.index,
            "estimate": entry.estimate,
            "degenerate": entry.degenerate,
        }
        if alpha == 1.0 and entry.index in seconds:
            row["seconds"] = seconds[entry.index]
        rows.append(row)
    inputs = _data_inputs(args, feature_names, label_name)
    inputs.update({"subcommand": "screen", "alpha": alpha, "top": top})
    columns = ("feature", "index", "estimate", "degenerate") + (
        ("seconds",) if alpha == 1.0 else ()
    )
    table_rows = [{c: row.get(c, "") for c in columns} for row in rows]
    _emit(args, inputs, {"ranking": rows}, table=(columns, table_rows), stream=stream)


def _cmd_oracle(args, stream):
    p = _check_range(args.p, "p", low=0.0, high=1.0)
    if args.family == "exp":
        theta = _check_range(args.theta, "theta", low=0.0)
        beta = _check_range(args.beta, "beta", low=0.0)
        corr = exp_mixture_corrs(p, theta, beta)
        result = {
            "rho_g": corr.rho_g,
            "rho_d": corr.rho_d,
            "rho_p2": corr.rho_p2,
            "dcov_xx": exp_mixture_dcov_xx(p, theta, beta),
        }
        params = {"p": p, "theta": theta, "beta": beta}
    elif args.family == "normal-location":
        a = _check_range(args.a, "a", low=0.0, low_open=False)
        corr = normal_location_corrs(p, a)
        result = {"rho_g": corr.rho_g, "rho_p2": corr.rho_p2}
        params = {"p": p, "a": a}
    else:
        r = _check_range(args.r, "r", low=0.0)
        result = {"rho_g": normal_scale_gcor(p, r)}
        params = {"p": p, "r": r}
    inputs = {
        "subcommand": "oracle",
        "family": args.family,
        "format": args.format,
        "threads": args.threads,
        **params,
    }
    _emit(args, inputs, result, stream=stream)


def _experiment_payload(experiment):
    rows = [dict(row) for row in experiment.rows]
    return (
        {"columns": list(experiment.columns), "rows": rows},
        (experiment.columns, rows),
    )


def _cmd_sim_coverage(args, stream):
    alpha = _check_alpha_arg(args.alpha)
    level = _check_range(args.level, "level", low=0.0, high=1.0)
    reps = _check_positive_int(args.reps, "reps")
    n = _check_positive_int(args.n, "n")
    seed = _resolve_cli_seed(args.seed)
    p = _check_range(args.p, "p", low=0.0, high=1.0)
    if args.family == "exp":
        theta = _check_range(args.theta, "theta", low=0.0)
        beta = _check_range(args.beta, "beta", low=0.0)
        spec = exponential_mixture((p, 1.0 - p), (theta, beta))
        params = {"p": p, "theta": theta, "beta": beta}
    elif args.family == "normal-location":
        a = _check_range(args.a, "a", low=0.0, low_open=False)
        spec = normal_location_mixture((p, 1.0 - p), (0.0, a), sd=1.0)
        params = {"p": p, "a": a}
    else:
        r = _check_range(args.r, "r", low=0.0)
        spec = normal_scale_mixture((p, 1.0 - p), (1.0, r))
        params = {"p": p, "r": r}
    experiment = coverage_experiment(
        spec, n, level=level, reps=reps, alpha=alpha, kind=args.kind, seed=seed
    )
    inputs = {
        "subcommand": "sim coverage",
        "family": args.family,
        "n": n,
        "level": level,
        "reps": reps,
        "alpha": alpha,
        "kind": args.kind,
        "seed": seed,
        "format": args.format,
        "threads": args.threads,
        **params,
    }
    result, table = _experiment_payload(experiment)
    _emit(args, inputs, result, table=table, stream=stream)


def _cmd_sim_power(args, stream):
    alpha = _check_alpha_arg(args.alpha)
    gamma = _check_range(args.gamma, "gamma", low=0.0, high=1.0)
    reps = _check_positive_int(args.reps, "reps")
    n = _check_positive_int(args.n, "n")
    m = _check_positive_int(args.m, "m")
    seed = _resolve_cli_seed(args.seed)
    statistics = [t.strip() for t in args.statistics.split(",") if t.strip()]
    if not statistics:
        raise CliError(EXIT_USAGE, "--statistics must name at least one statistic")
    designs = [_parse_design(text) for text in args.design]
    experiment = power_experiment(
        designs,
        n,
        n_permutations=m,
        gamma=gamma,
        statistics=statistics,
        reps=reps,
        alpha=alpha,
        seed=seed,
    )
    inputs = {
        "subcommand": "sim power",
        "designs": list(args.design),
        "n": n,
        "m": m,
        "gamma": gamma,
        "statistics": statistics,
        "reps": reps,
        "alpha": alpha,
        "seed": seed,
        "format": args.format,
        "threads": args.threads,
    }
    result, table = _experiment_payload(experiment)
    _emit(args, inputs, result, table=table, stream=stream)


def _cmd_sim_timing(args, stream):
    seed = _resolve_cli_seed(args.seed)
    reps = int(args.reps)
    if reps < 0:
        raise CliError(EXIT_USAGE, f"--reps must be nonnegative, got {args.reps}")
    try:
        d_values = [int(t) for t in args.d_values.split(":")]
        n_values = [int(t) for t in args.n_values.split(":")]
    except ValueError:
        raise CliError(EXIT_USAGE, "--d-values/--n-values must be colon-separated integers")
    statistics = [t.strip() for t in args.statistics.split(",") if t.strip()]
    experiment = timing_benchmark(d_values, n_values, reps=reps, seed=seed, statistics=statistics)
    inputs = {
        "subcommand": "sim timing",
        "d_values": d_values,
        "n_values": n_values,
        "reps": reps,
        "statistics": statistics,
        "seed": seed,
        "format": args.format,
        "threads": args.threads,
    }
    result, table = _experiment_payload(experiment)
    _emit(args, inputs, result, table=table, stream=stream)


# ---------------------------------------------------------------------------
# parser assembly


def _add_output_options(sub):
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--output", default=None, help="write the report here instead of stdout")
    sub.add_argument(
        "--threads",
        type=int,
        default=0,
        help="cap on worker threads, 0 = auto (this build computes serially)",
    )


def _add_data_options(sub):
    sub.add_argument("--data", required=True, help="CSV file with a header row")
    sub.add_argument("--label", required=True, help="label column (name or index)")
    sub.add_argument("--features", default=None, help="comma-separated feature columns")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ginicor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ginicor {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    sub = subparsers.add_parser("gcor", help="Gini correlation between features and label")
    _add_data_options(sub)
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--kind", choices=("v", "u"), default="v")
    _add_output_options(sub)
    sub.set_defaults(handler=_cmd_gcor)

    sub = subparsers.add_parser("dcor", help="distance correlation with the 0/1 label metric")
    _add_data_options(sub)
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--flavor", choices=("unbiased", "plugin"), default="unbiased")
    _add_output_options(sub)
    sub.set_defaults(handler=_cmd_dcor)

    sub = subparsers.add_parser("r2", help="ANOVA variance ratio (univariate feature)")
    _add_data_options(sub)
    _add_output_options(sub)
    sub.set_defaults(handler=_cmd_r2)

    sub = subparsers.add_parser("ci", help="jackknife confidence interval for the Gini correlation")
    _add_data_options(sub)
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--kind", choices=("v", "u"), default="v")
    sub.add_argument("--level", type=float, default=0.95)
    _add_output_options(sub)
    sub.set_defaults(handler=_cmd_ci)

    sub = subparsers.add_parser("test", help="permutation test of independence")
    _add_data_options(sub)
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--statistic", choices=("gcor", "dcor", "dcor-unbiased"), default="gcor")
    sub.add_argument("-m", "--m", type=int, default=200, help="number of permutations")
    sub.add_argument("--gamma", type=float, default=0.05)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--rho0", type=float, default=None, help="alternative for a power estimate")
    _add_output_options(sub)
    sub.set_defaults(handler=_cmd_test)

    sub = subparsers.add_parser("screen", help="rank features by Gini correlation")
    _add_data_options(sub)
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--top", type=int, default=None)
    _add_output_options(sub)
    sub.set_defaults(handler=_cmd_screen)

    sub = subparsers.add_parser("oracle", help="closed-form population correlations")
    oracle_sub = sub.add_subparsers(dest="family", required=True)
    exp = oracle_sub.add_parser("exp", help="two-component exponential mixture")
    exp.add_argument("--p", type=float, required=True)
    exp.add_argument("--theta", type=float, required=True)
    exp.add_argument("--beta", type=float, required=True)
    _add_output_options(exp)
    exp.set_defaults(handler=_cmd_oracle)
    loc = oracle_sub.add_parser("normal-location", help="equal-sd two-normal mixture")
    loc.add_argument("--p", type=float, required=True)
    loc.add_argument("--a", type=float, required=True, help="mean separation in sd units")
    _add_output_options(loc)
    loc.set_defaults(handler=_cmd_oracle)
    scale = oracle_sub.add_parser("normal-scale", help="equal-mean two-normal mixture")
    scale.add_argument("--p", type=float, required=True)
    scale.add_argument("--r", type=float, required=True, help="sd ratio")
    _add_output_options(scale)
    scale.set_defaults(handler=_cmd_oracle)

    sub = subparsers.add_parser("sim", help="seeded simulation experiments")
    sim_sub = sub.add_subparsers(dest="experiment", required=True)

    cov = sim_sub.add_parser("coverage", help="jackknife interval coverage")
    cov.add_argument("--family", choices=("exp", "normal-location", "normal-scale"), required=True)
    cov.add_argument("--p", type=float, default=0.5)
    cov.add_argument("--theta", type=float, default=1.0)
    cov.add_argument("--beta", type=float, default=4.0)
    cov.add_argument("--a", type=float, default=3.0)
    cov.add_argument("--r", type=float, default=3.0)
    cov.add_argument("--n", type=int, required=True)
    cov.add_argument("--level", type=float, default=0.95)
    cov.add_argument("--reps", type=int, default=1000)
    cov.add_argument("--alpha", type=float, default=1.0)
    cov.add_argument("--kind", choices=("v", "u"), default="v")
    cov.add_argument("--seed", type=int, default=None)
    _add_output_options(cov)
    cov.set_defaults(handler=_cmd_sim_coverage)

    pw = sim_sub.add_parser("power", help="permutation test size and power")
    pw.add_argument(
        "--design",
        action="append",
        required=True,
        help="mixture design, e.g. family=exp,weights=1/3:1/3:1/3,params=1:2:3",
    )
    pw.add_argument("--n", type=int, required=True)
    pw.add_argument("-m", "--m", type=int, default=200)
    pw.add_argument("--gamma", type=float, default=0.05)
    pw.add_argument("--statistics", default="gcor", help="comma-separated: gcor,dcor")
    pw.add_argument("--reps", type=int, default=300)
    pw.add_argument("--alpha", type=float, default=1.0)
    pw.add_argument("--seed", type=int, default=None)
    _add_output_options(pw)
    pw.set_defaults(handler=_cmd_sim_power)

    tm = sim_sub.add_parser("timing", help="gcor vs unbiased dcov wall-clock")
    tm.add_argument("--d-values", default="1", help="colon-separated dimensions")
    tm.add_argument("--n-values", required=True, help="colon-separated sample sizes")
    tm.add_argument("--reps", type=int, default=3)
    tm.add_argument("--statistics", default="gcor,dcov")
    tm.add_argument("--seed", type=int, default=None)
    _add_output_options(tm)
    tm.set_defaults(handler=_cmd_sim_timing)

    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    """Parse arguments, execute one subcommand and return the exit code."""
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.handler(args, stdout)
        return EXIT_OK
    except CliError as exc:
        print(f"error: {exc.message}", file=stderr)
        return exc.exit_code
    except DegenerateDataError as exc:
        print(f"error: degenerate data: {exc}", file=stderr)
        return EXIT_NUMERIC
    except ArithmeticError as exc:
        print(f"error: numeric failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    except DataValidationError as exc:
        print(f"error: invalid data: {exc}", file=stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run())
