"""Batch command-line front door.

Subcommands ``binary``, ``pooled``, ``covariate``, ``aroc``, ``timedep``
and ``simulate`` ingest a cohort CSV (or scenario settings), run one
configured analysis, and write artifacts into an output directory:

* ``curve.csv``: columns ``p,roc,band_lo,band_hi`` (band cells empty for
  estimators without uncertainty bands); always includes p=0 and p=1.
* ``summary.txt``: AUC with interval plus Youden index, threshold and
  optimal-FPF lines.
* ``metadata.json``: every parameter, seed and library version needed to
  reproduce the run byte-exactly.  No timestamps.
* ``curve.svg`` (optional): fixed-size static plot.
* ``curve_full.csv`` (optional): full-precision sidecar.

Defaults may come from an INI config file (section per subcommand plus
``[common]``); command-line flags override the file.  Exit codes: 0 ok,
2 validation failure, 3 numeric failure.  The environment variable
``ROCLAB_OUTDIR`` supplies the default output directory.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .binary_metrics import classification_fractions, predictive_values
from .core import SeedSpec
from .covariate_roc import (DdpConfig, RegressionSample, aroc, ddp_fit, ddp_roc,
                            faraggi_roc, location_scale_cdf,
                            location_scale_youden, ols_fit, pepe_semiparam_roc,
                            rocglm_fit)
from .errors import InvalidInputError
from .indices import youden_empirical, youden_from_cdfs
from .pooled_roc import (DpmConfig, bb_roc, dpm_fit, dpm_roc, empirical_roc,
                         kernel_cdf, kernel_roc, lscv_bandwidth,
                         silverman_bandwidth)
from .simulate import (BinormalScenario, gen_binormal, gen_covariate_linear,
                       gen_survival, true_binormal_auc, true_binormal_youden)
from .timedep_roc import SurvivalSample, cumdyn_fractions, timedep_roc

ENV_OUTDIR = "ROCLAB_OUTDIR"


# ---------------------------------------------------------------------------
# atomic artifact writers


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".roclab-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt6(x) -> str:
    if x is None:
        return ""
    return format(float(x), ".6g")


def _fmt_full(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def _curve_csv_text(curve, fmt) -> str:
    lines = ["p,roc,band_lo,band_hi"]
    lo = curve.band_lo if curve.band_lo is not None else [None] * len(curve.grid)
    hi = curve.band_hi if curve.band_hi is not None else [None] * len(curve.grid)
    for p, r, a, b in zip(curve.grid, curve.roc, lo, hi):
        lines.append(f"{fmt(p)},{fmt(r)},{fmt(a)},{fmt(b)}")
    return "\n".join(lines) + "\n"


def _interval_line(name: str, value, lo=None, hi=None) -> str:
    if value is None:
        return f"{name}: n/a"
    if lo is None or hi is None:
        return f"{name}: {_fmt6(value)}"
    return f"{name}: {_fmt6(value)} ({_fmt6(lo)}, {_fmt6(hi)})"


def _svg_text(curve) -> str:
    size, margin = 480, 40
    span = size - 2 * margin

    def sx(p):
        return margin + float(p) * span

    def sy(r):
        return margin + (1.0 - float(r)) * span

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="{margin}" y="{margin}" width="{span}" height="{span}" '
        f'fill="white" stroke="#333333"/>',
    ]
    if curve.band_lo is not None and curve.band_hi is not None:
        fwd = [f"{sx(p):.2f},{sy(r):.2f}" for p, r in zip(curve.grid, curve.band_hi)]
        back = [f"{sx(p):.2f},{sy(r):.2f}"
                for p, r in zip(curve.grid[::-1], curve.band_lo[::-1])]
        parts.append('<polygon points="' + " ".join(fwd + back)
                     + '" fill="#9ecae1" fill-opacity="0.55" stroke="none"/>')
    parts.append(f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(1):.2f}" '
                 f'y2="{sy(1):.2f}" stroke="#999999" stroke-dasharray="6,4"/>')
    pts = " ".join(f"{sx(p):.2f},{sy(r):.2f}" for p, r in zip(curve.grid, curve.roc))
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#08519c" '
                 f'stroke-width="2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def _write_outputs(outdir: str, params: dict, summary_lines: list[str],
                   curve=None, report=None) -> None:
    meta = {
        "tool": "roclab",
        "version": __version__,
        "libraries": _library_versions(),
        "params": params,
    }
    if report is not None:
        meta["input_report"] = report
    _atomic_write(os.path.join(outdir, "metadata.json"),
                  json.dumps(meta, indent=2, sort_keys=True, default=_json_default) + "\n")
    _atomic_write(os.path.join(outdir, "summary.txt"),
                  "\n".join(summary_lines) + "\n")
    if curve is not None:
        _atomic_write(os.path.join(outdir, "curve.csv"),
                      _curve_csv_text(curve, _fmt6))
        if params.get("full_precision"):
            _atomic_write(os.path.join(outdir, "curve_full.csv"),
                          _curve_csv_text(curve, _fmt_full))
        if params.get("svg"):
            _atomic_write(os.path.join(outdir, "curve.svg"), _svg_text(curve))


def _library_versions() -> dict:
    import scipy
    return {"numpy": np.__version__, "scipy": scipy.__version__,
            "python": ".".join(str(v) for v in sys.version_info[:3])}


# ---------------------------------------------------------------------------
# cohort ingestion


def _parse_cell(raw: str, column: str, row: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise InvalidInputError(
            f"non-numeric value {raw!r} in column '{column}' at row {row}") from None


def read_cohort(path: str, columns: list[str], *, binary_cols=(),
                log_cols=()) -> tuple[dict, dict]:
    """Read selected columns from a cohort CSV.

    Returns ``(data, report)``: ``data`` maps each requested column name to
    a float array over the retained rows; ``report`` records row counts and
    the 1-based file rows excluded for missing values.  Non-numeric cells
    and out-of-range binary codes raise validation errors naming the row
    and column.
    """
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise InvalidInputError(f"cannot read input file: {exc}") from None
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames
        if header is None:
            raise InvalidInputError(f"{path}: empty file, expected a CSV header")
        missing = [c for c in columns if c not in header]
        if missing:
            raise InvalidInputError(
                f"{path}: missing required column(s) {', '.join(sorted(missing))}; "
                f"found {', '.join(header)}")
        values: dict[str, list[float]] = {c: [] for c in columns}
        n_rows = 0
        excluded: list[int] = []
        for record in reader:
            n_rows += 1
            row = reader.line_num
            cells = {c: (record[c] or "").strip() for c in columns}
            if any(cell == "" for cell in cells.values()):
                excluded.append(row)
                continue
            parsed = {c: _parse_cell(cells[c], c, row) for c in columns}
            for c in binary_cols:
                if parsed[c] not in (0.0, 1.0):
                    raise InvalidInputError(
                        f"column '{c}' must be 0 or 1, got {cells[c]!r} at row {row}")
            for c in log_cols:
                if parsed[c] <= 0.0:
                    raise InvalidInputError(
                        f"cannot log-transform nonpositive value {cells[c]!r} "
                        f"in column '{c}' at row {row}")
                parsed[c] = math.log(parsed[c])
            for c in columns:
                values[c].append(parsed[c])
    if n_rows == 0:
        raise InvalidInputError(f"{path}: no data rows")
    data = {c: np.asarray(v, dtype=float) for c, v in values.items()}
    report = {"path": path, "n_rows": n_rows, "n_used": n_rows - len(excluded),
              "n_excluded": len(excluded), "excluded_rows": excluded}
    if report["n_used"] == 0:
        raise InvalidInputError(f"{path}: every row was excluded for missing values")
    return data, report


def _split_groups(data: dict, marker: str, status: str) -> tuple[np.ndarray, np.ndarray]:
    mask = data[status] == 1.0
    d, nd = data[marker][mask], data[marker][~mask]
    if d.size == 0 or nd.size == 0:
        raise InvalidInputError(
            f"empty group after filtering: {d.size} diseased, {nd.size} nondiseased")
    return d, nd


# ---------------------------------------------------------------------------
# config/flag resolution


def _load_config(path: str | None) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser()
    if path is not None:
        if not os.path.exists(path):
            raise InvalidInputError(f"config file not found: {path}")
        try:
            cfg.read(path)
        except configparser.Error as exc:
            raise InvalidInputError(f"cannot parse config file: {exc}") from None
    return cfg


def _cast_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise InvalidInputError(f"expected a boolean, got {raw!r}")


class Options:
    """Flag-over-config-over-default resolution for one subcommand."""

    def __init__(self, args: argparse.Namespace, cfg: configparser.ConfigParser,
                 section: str):
        self.args = args
        self.cfg = cfg
        self.section = section
        self.resolved: dict = {}

    def get(self, key: str, cast, default=None, required: bool = False):
        value = getattr(self.args, key, None)
        if value is None:
            for section in (self.section, "common"):
                if self.cfg.has_option(section, key):
                    raw = self.cfg.get(section, key)
                    try:
                        value = _cast_bool(raw) if cast is bool else cast(raw)
                    except (ValueError, TypeError):
                        raise InvalidInputError(
                            f"config option [{section}] {key} = {raw!r} "
                            f"is not a valid {cast.__name__}") from None
                    break
        if value is None:
            if required:
                raise InvalidInputError(f"missing required option '{key}'")
            value = default
        self.resolved[key] = value
        return value


def _resolve_outdir(opts: Options) -> str:
    outdir = opts.get("outdir", str, None)
    if outdir is None:
        outdir = os.environ.get(ENV_OUTDIR) or "."
        opts.resolved["outdir"] = outdir
    os.makedirs(outdir, exist_ok=True)
    return outdir


def _common_options(opts: Options) -> None:
    opts.get("svg", bool, False)
    opts.get("full_precision", bool, False)


def _grid(opts: Options) -> np.ndarray:
    n = opts.get("grid_points", int, 201)
    if n < 2:
        raise InvalidInputError("grid_points must be at least 2")
    return np.linspace(0.0, 1.0, n)


def _parse_floats(raw: str) -> list[float]:
    try:
        return [float(tok) for tok in raw.split(",") if tok.strip() != ""]
    except ValueError:
        raise InvalidInputError(f"expected comma-separated numbers, got {raw!r}") from None


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_binary(args, cfg) -> int:
    opts = Options(args, cfg, "binary")
    outdir = _resolve_outdir(opts)
    _common_options(opts)
    path = opts.get("input", str, required=True)
    marker = opts.get("marker_col", str, "marker")
    status = opts.get("status_col", str, "status")
    threshold = opts.get("threshold", float, required=True)
    prevalence = opts.get("prevalence", float, None)
    log_marker = opts.get("log_marker", bool, False)

    data, report = read_cohort(path, [marker, status], binary_cols=(status,),
                               log_cols=(marker,) if log_marker else ())
    d, nd = _split_groups(data, marker, status)
    fractions = classification_fractions(d, nd, threshold)
    lines = [
        "analysis: binary",
        f"threshold: {_fmt6(threshold)}",
        f"n_diseased: {d.size}",
        f"n_nondiseased: {nd.size}",
        f"tpf: {_fmt6(fractions.tpf)}",
        f"fpf: {_fmt6(fractions.fpf)}",
        f"tnf: {_fmt6(fractions.tnf)}",
        f"fnf: {_fmt6(fractions.fnf)}",
    ]
    if prevalence is not None:
        ppv, npv = predictive_values(fractions, prevalence)
        lines += [f"ppv: {_fmt6(ppv)}", f"npv: {_fmt6(npv)}"]
    else:
        lines += ["ppv: n/a", "npv: n/a"]
    _write_outputs(outdir, opts.resolved, lines, report=report)
    return 0


def _pooled_curve_and_youden(opts: Options, d: np.ndarray, nd: np.ndarray,
                             grid: np.ndarray):
    estimator = opts.get("estimator", str, "empirical")
    level = opts.get("level", float, 0.95)
    if estimator == "empirical":
        curve = empirical_roc(d, nd, grid)
        yi = youden_empirical(d, nd)
        return curve, {"yi": yi.yi, "c_star": yi.c_star, "p_star": yi.p_star}
    if estimator == "kernel":
        method = opts.get("bandwidth_method", str, "silverman")
        if method not in ("silverman", "lscv"):
            raise InvalidInputError("bandwidth_method must be 'silverman' or 'lscv'")
        pick = silverman_bandwidth if method == "silverman" else lscv_bandwidth
        h_d = opts.get("bandwidth_d", float, None)
        h_nd = opts.get("bandwidth_nd", float, None)
        h_d = pick(d) if h_d is None else h_d
        h_nd = pick(nd) if h_nd is None else h_nd
        opts.resolved["bandwidth_d"] = h_d
        opts.resolved["bandwidth_nd"] = h_nd
        curve = kernel_roc(d, nd, h_d, h_nd, grid)
        lo = float(min(d.min(), nd.min())) - 4.0 * max(h_d, h_nd)
        hi = float(max(d.max(), nd.max())) + 4.0 * max(h_d, h_nd)
        yi = youden_from_cdfs(lambda c: kernel_cdf(d, h_d, c),
                              lambda c: kernel_cdf(nd, h_nd, c), lo, hi)
        return curve, {"yi": yi.yi, "c_star": yi.c_star, "p_star": yi.p_star}
    if estimator == "bb":
        n_draws = opts.get("draws", int, 1000)
        seed = opts.get("seed", int, 20260815)
        ensemble = bb_roc(d, nd, n_draws, grid, seed=SeedSpec(seed, 0), youden=True)
        return ensemble.summarize(level), ensemble.youden_summary(level)
    if estimator == "dpm":
        seed = opts.get("seed", int, 20260815)
        kwargs = dict(
            truncation=opts.get("truncation", int, 10),
            alpha=opts.get("alpha", float, 1.0),
            burn_in=opts.get("burn_in", int, 500),
            n_save=opts.get("n_save", int, 1000),
        )
        draws_d = dpm_fit(d, DpmConfig(seed=SeedSpec(seed, 1), **kwargs))
        draws_nd = dpm_fit(nd, DpmConfig(seed=SeedSpec(seed, 2), **kwargs))
        ensemble = dpm_roc(draws_d, draws_nd, grid, youden=True)
        return ensemble.summarize(level), ensemble.youden_summary(level)
    raise InvalidInputError(
        f"unknown estimator {estimator!r}: choose empirical, kernel, bb or dpm")


def _youden_lines(youden) -> list[str]:
    if youden is None:
        return ["yi: n/a", "c_star: n/a", "p_star: n/a"]
    out = []
    for name in ("yi", "c_star", "p_star"):
        value = youden.get(name)
        if value is None:
            out.append(f"{name}: n/a")
        elif isinstance(value, tuple):
            out.append(_interval_line(name, *value))
        else:
            out.append(_interval_line(name, value))
    return out


def _cmd_pooled(args, cfg) -> int:
    opts = Options(args, cfg, "pooled")
    outdir = _resolve_outdir(opts)
    _common_options(opts)
    path = opts.get("input", str, required=True)
    marker = opts.get("marker_col", str, "marker")
    status = opts.get("status_col", str, "status")
    log_marker = opts.get("log_marker", bool, False)
    grid = _grid(opts)

    data, report = read_cohort(path, [marker, status], binary_cols=(status,),
                               log_cols=(marker,) if log_marker else ())
    d, nd = _split_groups(data, marker, status)
    curve, youden = _pooled_curve_and_youden(opts, d, nd, grid)
    ci = curve.auc_ci
    lines = [
        "analysis: pooled",
        f"estimator: {opts.resolved['estimator']}",
        f"n_diseased: {d.size}",
        f"n_nondiseased: {nd.size}",
        _interval_line("auc", curve.auc, *(ci if ci is not None else (None, None))),
    ] + _youden_lines(youden)
    _write_outputs(outdir, opts.resolved, lines, curve=curve, report=report)
    return 0


def _regression_samples(data: dict, marker: str, status: str,
                        covariates: list[str]) -> tuple[RegressionSample, RegressionSample]:
    mask = data[status] == 1.0
    if not (mask.any() and (~mask).any()):
        raise InvalidInputError("empty group after filtering")
    cols = [np.ones(data[marker].size)] + [data[c] for c in covariates]
    design = np.column_stack(cols)
    labels = ("intercept",) + tuple(covariates)
    mk = data[marker]
    return (RegressionSample(mk[mask], design[mask], labels),
            RegressionSample(mk[~mask], design[~mask], labels))


def _cmd_covariate(args, cfg) -> int:
    opts = Options(args, cfg, "covariate")
    outdir = _resolve_outdir(opts)
    _common_options(opts)
    path = opts.get("input", str, required=True)
    marker = opts.get("marker_col", str, "marker")
    status = opts.get("status_col", str, "status")
    log_marker = opts.get("log_marker", bool, False)
    covariates = _parse_names(opts.get("covariates", str, required=True))
    at = _parse_floats(opts.get("at", str, required=True))
    if len(at) != len(covariates):
        raise InvalidInputError(
            f"--at needs {len(covariates)} value(s) for {', '.join(covariates)}")
    estimator = opts.get("estimator", str, "faraggi")
    level = opts.get("level", float, 0.95)
    grid = _grid(opts)

    data, report = read_cohort(path, [marker, status] + covariates,
                               binary_cols=(status,),
                               log_cols=(marker,) if log_marker else ())
    sample_d, sample_nd = _regression_samples(data, marker, status, covariates)

    youden = None
    if estimator in ("faraggi", "pepe"):
        fit_d, fit_nd = ols_fit(sample_d), ols_fit(sample_nd)
        errors = "normal" if estimator == "faraggi" else "empirical"
        build = faraggi_roc if estimator == "faraggi" else pepe_semiparam_roc
        curve = build(fit_d, fit_nd, at, grid)
        yi = location_scale_youden(fit_d, fit_nd, at, errors)
        youden = {"yi": yi.yi, "c_star": yi.c_star, "p_star": yi.p_star}
    elif estimator == "ddp":
        seed = opts.get("seed", int, 20260815)
        kwargs = dict(
            truncation=opts.get("truncation", int, 10),
            alpha=opts.get("alpha", float, 1.0),
            burn_in=opts.get("burn_in", int, 500),
            n_save=opts.get("n_save", int, 1000),
        )
        draws_d = ddp_fit(sample_d, DdpConfig(seed=SeedSpec(seed, 1), **kwargs))
        draws_nd = ddp_fit(sample_nd, DdpConfig(seed=SeedSpec(seed, 2), **kwargs))
        z = np.concatenate([[1.0], np.asarray(at, dtype=float)])
        ensemble = ddp_roc(draws_d, draws_nd, z, grid, youden=True)
        curve = ensemble.summarize(level)
        youden = ensemble.youden_summary(level)
    elif estimator == "rocglm":
        errors = opts.get("errors", str, "empirical")
        baseline = opts.get("baseline", str, "parametric")
        nd_cdf = location_scale_cdf(ols_fit(sample_nd), errors)
        fit = rocglm_fit(sample_d, nd_cdf, baseline=baseline)
        curve = fit.curve(at, grid)
        opts.resolved["rocglm_alpha"] = [float(v) for v in fit.alpha]
        opts.resolved["rocglm_beta"] = [float(v) for v in fit.beta]
        idx = int(np.argmax(curve.roc - curve.grid))
        youden = {"yi": float(curve.roc[idx] - curve.grid[idx]), "c_star": None,
                  "p_star": float(curve.grid[idx])}
    else:
        raise InvalidInputError(
            f"unknown estimator {estimator!r}: choose faraggi, pepe, ddp or rocglm")

    ci = curve.auc_ci
    lines = [
        "analysis: covariate",
        f"estimator: {estimator}",
        f"at: {','.join(_fmt6(v) for v in at)}",
        f"n_diseased: {sample_d.n}",
        f"n_nondiseased: {sample_nd.n}",
        _interval_line("auc", curve.auc, *(ci if ci is not None else (None, None))),
    ] + _youden_lines(youden)
    _write_outputs(outdir, opts.resolved, lines, curve=curve, report=report)
    return 0


def _cmd_aroc(args, cfg) -> int:
    opts = Options(args, cfg, "aroc")
    outdir = _resolve_outdir(opts)
    _common_options(opts)
    path = opts.get("input", str, required=True)
    marker = opts.get("marker_col", str, "marker")
    status = opts.get("status_col", str, "status")
    log_marker = opts.get("log_marker", bool, False)
    covariates = _parse_names(opts.get("covariates", str, required=True))
    errors = opts.get("errors", str, "empirical")
    grid = _grid(opts)

    data, report = read_cohort(path, [marker, status] + covariates,
                               binary_cols=(status,),
                               log_cols=(marker,) if log_marker else ())
    sample_d, sample_nd = _regression_samples(data, marker, status, covariates)
    nd_cdf = location_scale_cdf(ols_fit(sample_nd), errors)
    curve = aroc(sample_d, nd_cdf, grid)
    idx = int(np.argmax(curve.roc - curve.grid))
    lines = [
        "analysis: aroc",
        f"errors: {errors}",
        f"n_diseased: {sample_d.n}",
        f"n_nondiseased: {sample_nd.n}",
        _interval_line("auc", curve.auc),
        _interval_line("yi", float(curve.roc[idx] - curve.grid[idx])),
        "c_star: n/a",
        _interval_line("p_star", float(curve.grid[idx])),
    ]
    _write_outputs(outdir, opts.resolved, lines, curve=curve, report=report)
    return 0


def _cmd_timedep(args, cfg) -> int:
    opts = Options(args, cfg, "timedep")
    outdir = _resolve_outdir(opts)
    _common_options(opts)
    path = opts.get("input", str, required=True)
    marker = opts.get("marker_col", str, "marker")
    time_col = opts.get("time_col", str, "time")
    event_col = opts.get("event_col", str, "event")
    log_marker = opts.get("log_marker", bool, False)
    horizon = opts.get("time", float, required=True)
    isotonic = opts.get("isotonic", bool, False)
    grid = _grid(opts)

    data, report = read_cohort(path, [marker, time_col, event_col],
                               binary_cols=(event_col,),
                               log_cols=(marker,) if log_marker else ())
    sample = SurvivalSample(marker=data[marker], time=data[time_col],
                            event=data[event_col])
    curve = timedep_roc(sample, horizon, grid, isotonic=isotonic)

    best = (-np.inf, None)
    for c in np.unique(data[marker]):
        tpf, tnf = cumdyn_fractions(sample, float(c), horizon)
        if tpf + tnf - 1.0 > best[0]:
            best = (tpf + tnf - 1.0, (float(c), 1.0 - tnf))
    yi, (c_star, p_star) = best
    lines = [
        "analysis: timedep",
        f"time: {_fmt6(horizon)}",
        f"n_subjects: {sample.n}",
        _interval_line("auc", curve.auc),
        _interval_line("yi", yi),
        _interval_line("c_star", c_star),
        _interval_line("p_star", p_star),
    ]
    _write_outputs(outdir, opts.resolved, lines, curve=curve, report=report)
    return 0


def _cohort_csv_text(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _cmd_simulate(args, cfg) -> int:
    opts = Options(args, cfg, "simulate")
    outdir = _resolve_outdir(opts)
    _common_options(opts)
    scenario = opts.get("scenario", str, "binormal")
    seed = opts.get("seed", int, 20260815)
    spec = SeedSpec(seed, 0)

    if scenario == "binormal":
        a = opts.get("a", float, 1.0)
        b = opts.get("b", float, 1.0)
        n_d = opts.get("n_diseased", int, 100)
        n_nd = opts.get("n_nondiseased", int, 100)
        sample = gen_binormal(BinormalScenario(a=a, b=b, n_diseased=n_d,
                                               n_nondiseased=n_nd, seed=spec))
        rows = [(v, 1.0) for v in sample.diseased] + \
               [(v, 0.0) for v in sample.nondiseased]
        text = _cohort_csv_text(["marker", "status"], rows)
        truth = true_binormal_youden(a, b)
        lines = [
            "analysis: simulate",
            "scenario: binormal",
            f"n_diseased: {n_d}",
            f"n_nondiseased: {n_nd}",
            f"true_auc: {_fmt6(true_binormal_auc(a, b))}",
            f"true_yi: {_fmt6(truth.yi)}",
            f"true_c_star: {_fmt6(truth.c_star)}",
            f"true_p_star: {_fmt6(truth.p_star)}",
        ]
    elif scenario == "covariate":
        beta_d = _parse_floats(opts.get("beta_d", str, "0.5,1.0"))
        beta_nd = _parse_floats(opts.get("beta_nd", str, "0.0,1.0"))
        sigma_d = opts.get("sigma_d", float, 1.0)
        sigma_nd = opts.get("sigma_nd", float, 1.0)
        n_d = opts.get("n_diseased", int, 100)
        n_nd = opts.get("n_nondiseased", int, 100)
        sample_d, sample_nd = gen_covariate_linear(
            beta_d, beta_nd, sigma_d, sigma_nd, n_d, n_nd, seed=spec)
        rows = [(y, 1.0, x) for y, x in zip(sample_d.outcomes, sample_d.design[:, 1])]
        rows += [(y, 0.0, x) for y, x in zip(sample_nd.outcomes, sample_nd.design[:, 1])]
        text = _cohort_csv_text(["marker", "status", "x"], rows)
        lines = ["analysis: simulate", "scenario: covariate",
                 f"n_diseased: {n_d}", f"n_nondiseased: {n_nd}"]
    elif scenario == "survival":
        n = opts.get("n", int, 200)
        gamma = opts.get("gamma", float, 1.0)
        censor_rate = opts.get("censor_rate", float, 0.0)
        sample = gen_survival(n, gamma, censor_rate, seed=spec)
        rows = zip(sample.marker, sample.time, sample.event)
        text = _cohort_csv_text(["marker", "time", "event"], rows)
        lines = ["analysis: simulate", "scenario: survival",
                 f"n_subjects: {n}",
                 f"n_events: {int(np.sum(sample.event))}"]
    else:
        raise InvalidInputError(
            f"unknown scenario {scenario!r}: choose binormal, covariate or survival")

    _atomic_write(os.path.join(outdir, "cohort.csv"), text)
    _write_outputs(outdir, opts.resolved, lines)
    return 0


def _parse_names(raw: str) -> list[str]:
    names = [tok.strip() for tok in raw.split(",") if tok.strip() != ""]
    if not names:
        raise InvalidInputError("expected at least one column name")
    return names


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="INI config file; flags override it")
    sub.add_argument("--outdir", help=f"output directory (default ${ENV_OUTDIR} or .)")
    sub.add_argument("--svg", action="store_const", const=True, default=None,
                     help="also write curve.svg")
    sub.add_argument("--full-precision", dest="full_precision",
                     action="store_const", const=True, default=None,
                     help="also write curve_full.csv with full-precision values")
    sub.add_argument("--grid-points", dest="grid_points", type=int,
                     help="number of FPF grid points including 0 and 1 (default 201)")
    sub.add_argument("--seed", type=int, help="master seed for stochastic estimators")


def _add_cohort(sub: argparse.ArgumentParser, *, status: bool = True,
                survival: bool = False) -> None:
    sub.add_argument("--input", help="cohort CSV path")
    sub.add_argument("--marker-col", dest="marker_col", help="marker column (default marker)")
    if status:
        sub.add_argument("--status-col", dest="status_col", help="status column (default status)")
    if survival:
        sub.add_argument("--time-col", dest="time_col", help="time column (default time)")
        sub.add_argument("--event-col", dest="event_col", help="event column (default event)")
    sub.add_argument("--log-marker", dest="log_marker", action="store_const",
                     const=True, default=None,
                     help="analyze the natural log of the marker")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roclab", description="ROC analysis of diagnostic and prognostic tests")
    parser.add_argument("--version", action="version", version=f"roclab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("binary", help="confusion fractions at a fixed threshold")
    _add_common(p)
    _add_cohort(p)
    p.add_argument("--threshold", type=float, help="positivity threshold (marker >= c)")
    p.add_argument("--prevalence", type=float, help="disease prevalence for PPV/NPV")
    p.set_defaults(handler=_cmd_binary)

    p = subs.add_parser("pooled", help="pooled ROC curve, AUC and Youden index")
    _add_common(p)
    _add_cohort(p)
    p.add_argument("--estimator", choices=["empirical", "kernel", "bb", "dpm"])
    p.add_argument("--bandwidth-method", dest="bandwidth_method",
                   choices=["silverman", "lscv"])
    p.add_argument("--bandwidth-d", dest="bandwidth_d", type=float)
    p.add_argument("--bandwidth-nd", dest="bandwidth_nd", type=float)
    p.add_argument("--draws", type=int, help="Bayesian bootstrap draws (default 1000)")
    p.add_argument("--level", type=float, help="credible level (default 0.95)")
    p.add_argument("--truncation", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--burn-in", dest="burn_in", type=int)
    p.add_argument("--n-save", dest="n_save", type=int)
    p.set_defaults(handler=_cmd_pooled)

    p = subs.add_parser("covariate", help="covariate-specific ROC curve")
    _add_common(p)
    _add_cohort(p)
    p.add_argument("--estimator", choices=["faraggi", "pepe", "ddp", "rocglm"])
    p.add_argument("--covariates", help="comma-separated covariate columns")
    p.add_argument("--at", help="comma-separated covariate values to condition on")
    p.add_argument("--errors", choices=["empirical", "normal"],
                   help="residual law for the conditional reference CDF")
    p.add_argument("--baseline", choices=["parametric", "spline"],
                   help="ROC-GLM baseline form")
    p.add_argument("--level", type=float)
    p.add_argument("--truncation", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--burn-in", dest="burn_in", type=int)
    p.add_argument("--n-save", dest="n_save", type=int)
    p.set_defaults(handler=_cmd_covariate)

    p = subs.add_parser("aroc", help="covariate-adjusted ROC curve")
    _add_common(p)
    _add_cohort(p)
    p.add_argument("--covariates", help="comma-separated covariate columns")
    p.add_argument("--errors", choices=["empirical", "normal"])
    p.set_defaults(handler=_cmd_aroc)

    p = subs.add_parser("timedep", help="cumulative/dynamic time-dependent ROC")
    _add_common(p)
    _add_cohort(p, status=False, survival=True)
    p.add_argument("--time", type=float, help="evaluation time t")
    p.add_argument("--isotonic", action="store_const", const=True, default=None,
                   help="project the curve to a monotone step function")
    p.set_defaults(handler=_cmd_timedep)

    p = subs.add_parser("simulate", help="generate a synthetic cohort CSV")
    _add_common(p)
    p.add_argument("--scenario", choices=["binormal", "covariate", "survival"])
    p.add_argument("--a", type=float, help="binormal intercept parameter")
    p.add_argument("--b", type=float, help="binormal slope parameter")
    p.add_argument("--n-diseased", dest="n_diseased", type=int)
    p.add_argument("--n-nondiseased", dest="n_nondiseased", type=int)
    p.add_argument("--n", type=int, help="survival scenario cohort size")
    p.add_argument("--gamma", type=float, help="marker effect on the event hazard")
    p.add_argument("--censor-rate", dest="censor_rate", type=float)
    p.add_argument("--beta-d", dest="beta_d", help="diseased mean coefficients")
    p.add_argument("--beta-nd", dest="beta_nd", help="nondiseased mean coefficients")
    p.add_argument("--sigma-d", dest="sigma_d", type=float)
    p.add_argument("--sigma-nd", dest="sigma_nd", type=float)
    p.set_defaults(handler=_cmd_simulate)
    return parser


def _write_error(args, exc: Exception, code: int) -> None:
    outdir = getattr(args, "outdir", None) or os.environ.get(ENV_OUTDIR) or "."
    try:
        os.makedirs(outdir, exist_ok=True)
        _atomic_write(os.path.join(outdir, "error.json"), json.dumps(
            {"error": type(exc).__name__, "message": str(exc), "exit_code": code},
            indent=2, sort_keys=True) + "\n")
    except OSError:
        pass


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        return args.handler(args, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _write_error(args, exc, 2)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _write_error(args, exc, 3)
        return 3


if __name__ == "__main__":
    sys.exit(main())
