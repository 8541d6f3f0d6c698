"""Command-line front end.

Every run emits exactly one JSON run report (stdout by default) with stable
key order and no timestamps, so identical invocations produce identical bytes.
Exit codes: 0 success, 1 usage, 2 bad input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .costmodel import (
    AnalyticProvider,
    CostParams,
    CsvProvider,
    MeasuredCpuProvider,
    calibrate,
    crossover_density,
    default_cost_params,
    estimate_scalar,
    estimate_tile,
    fit_report,
    load_params,
    save_params,
)
from .executors import Assignment, Path, spmm_hybrid, spmm_scalar, spmm_tile
from .gnn import GnnLayer, layer_bench, normalize_adj
from .layout import build_windows_basic, build_windows_optimized, reorder
from .matrices import (
    DenseMatrix,
    FormatError,
    Graph,
    InvariantError,
    SparseCsr,
    load_edge_list,
    load_matrix_market,
    parse_edge_list,
    write_matrix_market,
)
from .selector import (
    TrainingSample,
    accuracy,
    classify_windows,
    collect_samples,
    default_grid,
    default_model,
    dense_grid,
    holdout_split,
    load_model,
    save_model,
    train,
)
from .windows import WindowFeatures, features, partition


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    version: str = __version__

    def to_json(self) -> str:
        doc = _plain(dataclasses.asdict(self))
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _plain(obj):
    """Coerce numpy scalars/arrays so reports serialize deterministically."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    return obj


class PipelineError(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"pipeline stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; this tool reserves 2 for bad input."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- loading


def _load_matrix(path: str) -> SparseCsr:
    if path.endswith(".mtx"):
        return load_matrix_market(path)
    g = load_edge_list(path, undirected=True)
    return g.adjacency


def _load_graph(path: str) -> Graph:
    if path.endswith(".mtx"):
        csr = load_matrix_market(path)
        g = Graph(csr.num_rows, csr, undirected=True)
        g.validate()
        return g
    return load_edge_list(path, undirected=True)


def _load_dense(spec: str, needed_rows: int, default_seed: int) -> DenseMatrix:
    """Either a CSV path or 'random:dim=D[,seed=S]'."""
    if spec.startswith("random:"):
        opts = {}
        for part in spec[len("random:") :].split(","):
            if not part:
                continue
            key, _, value = part.partition("=")
            opts[key.strip()] = value.strip()
        unknown = set(opts) - {"dim", "seed"}
        if unknown or "dim" not in opts:
            raise ValueError(f"dense spec must look like random:dim=D[,seed=S], got {spec!r}")
        dim = int(opts["dim"])
        seed = int(opts.get("seed", default_seed))
        return DenseMatrix.random(needed_rows, dim, seed=seed)
    data = np.loadtxt(spec, delimiter=",", ndmin=2)
    return DenseMatrix(data)


def _resolve_params(path: str | None) -> CostParams:
    return load_params(path) if path else default_cost_params()


def _resolve_model(path: str | None):
    return load_model(path) if path else default_model()


def _resolve_provider(spec: str, params_path: str | None, repeats: int, seed: int):
    if spec == "cost-model":
        return AnalyticProvider(_resolve_params(params_path))
    if spec == "measured":
        return MeasuredCpuProvider(repeats=repeats, seed=seed)
    if spec.startswith("csv:"):
        return CsvProvider(spec[len("csv:") :])
    raise ValueError(f"provider must be cost-model, measured, or csv:<path>, got {spec!r}")


def _window_feature_rows(windows) -> list[WindowFeatures]:
    return [features(w) for w in windows]


def _mean_nonempty(values: list[float], mask: list[bool]) -> float:
    kept = [v for v, m in zip(values, mask) if m]
    return float(np.mean(kept)) if kept else 0.0


# ---------------------------------------------------------------- commands


def cmd_convert(args) -> RunReport:
    report = RunReport("convert", inputs={"in": args.infile, "out": args.outfile})
    in_fmt = args.from_format or ("mtx" if args.infile.endswith(".mtx") else "edgelist")
    out_fmt = args.to_format or ("mtx" if args.outfile.endswith(".mtx") else "edgelist")
    if in_fmt == "mtx":
        csr = load_matrix_market(args.infile)
        report.inputs["format"] = "mtx"
    else:
        edges, one_based = parse_edge_list(args.infile)
        g = load_edge_list(args.infile, undirected=not args.directed)
        csr = g.adjacency
        report.inputs["format"] = "edgelist"
        report.inputs["detected_one_based"] = one_based
    if out_fmt == "mtx":
        write_matrix_market(csr, args.outfile)
    else:
        rows, cols, _ = csr.to_coo()
        with open(args.outfile, "w", encoding="utf-8") as fh:
            for i, j in zip(rows, cols):
                fh.write(f"{int(i)} {int(j)}\n")
    report.outputs["format"] = out_fmt
    report.metrics = {"num_rows": csr.num_rows, "num_cols": csr.num_cols, "nnz": csr.nnz}
    return report


def cmd_partition_report(args) -> RunReport:
    csr = _load_matrix(args.matrix)
    windows = partition(csr, window_height=args.window_height)
    feats = _window_feature_rows(windows)
    nonempty = [w.nnz > 0 for w in windows]
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["window_id", "row_start", "row_count", "nnz", "ncols", "density", "ci"])
            for w, f in zip(windows, feats):
                writer.writerow(
                    [w.window_id, w.row_start, w.row_count, w.nnz, f.ncols, repr(f.density), repr(f.computing_intensity)]
                )
    report = RunReport("partition-report", inputs={"matrix": args.matrix, "window_height": args.window_height})
    if args.out:
        report.outputs["csv"] = args.out
    report.metrics = {
        "windows": len(windows),
        "windows_empty": sum(1 for m in nonempty if not m),
        "nnz": csr.nnz,
        "mean_density": _mean_nonempty([f.density for f in feats], nonempty),
        "mean_ci": _mean_nonempty([f.computing_intensity for f in feats], nonempty),
    }
    return report


def cmd_train_selector(args) -> RunReport:
    grid = dense_grid() if args.grid == "dense" else default_grid()
    provider = _resolve_provider(args.provider, args.params, args.repeats, args.seed)
    samples = collect_samples(grid, provider, dim=args.dim)
    train_part, hold_part = holdout_split(samples, frac=args.holdout, seed=args.seed)
    model = train(train_part, seed=args.seed)
    provenance = {
        "grid": args.grid,
        "provider": args.provider,
        "dim": args.dim,
        "n_train": len(train_part),
        "n_holdout": len(hold_part),
    }
    save_model(model, args.out, provenance=provenance)
    report = RunReport(
        "train-selector",
        inputs={"grid": args.grid, "provider": args.provider, "dim": args.dim, "holdout": args.holdout},
    )
    report.outputs["model"] = args.out
    report.metrics = {
        "n_samples": len(samples),
        "n_train": len(train_part),
        "n_holdout": len(hold_part),
        "train_accuracy": accuracy(model, train_part),
        "holdout_accuracy": accuracy(model, hold_part),
        "scalar_label_fraction": float(np.mean([s.label for s in samples])),
    }
    return report


def cmd_classify(args) -> RunReport:
    csr = _load_matrix(args.matrix)
    model = _resolve_model(args.model)
    windows = partition(csr)
    assignment = classify_windows(model, windows)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["window_id", "path"])
            for w in windows:
                writer.writerow([w.window_id, assignment.path(w.window_id).value])
    report = RunReport("classify", inputs={"matrix": args.matrix, "model": args.model or "default"})
    if args.out:
        report.outputs["csv"] = args.out
    report.metrics = {
        "windows": len(windows),
        "windows_scalar": assignment.count(Path.SCALAR),
        "windows_tile": assignment.count(Path.TILE),
    }
    return report


def cmd_calibrate(args) -> RunReport:
    provider = _resolve_provider(args.provider, None, args.repeats, args.seed)
    if args.provider == "cost-model":
        raise ValueError("calibrate requires timings; use --provider measured or csv:<path>")
    grid = dense_grid() if args.grid == "dense" else default_grid()
    dims = [int(d) for d in args.dims.split(",")]
    from .selector import generate_synthetic

    samples = []
    for ncols, nnz, seed in grid:
        w = generate_synthetic(ncols, nnz, seed)
        f = features(w)
        for dim in dims:
            t_scalar, t_tile = provider(w, dim)
            samples.append((f, dim, t_scalar, t_tile))
    params = calibrate(samples)
    diagnostics = fit_report(samples, params)
    provenance = {
        "provider": args.provider,
        "grid": args.grid,
        "dims": dims,
        "repeats": args.repeats,
        "n_samples": len(samples),
    }
    save_params(params, args.out, provenance=provenance)
    report = RunReport("calibrate", inputs={"provider": args.provider, "grid": args.grid, "dims": dims})
    report.outputs["params"] = args.out
    report.metrics = {**params.as_dict(), **diagnostics}
    return report


def cmd_sweep(args) -> RunReport:
    params = _resolve_params(args.params)
    rows = []
    for d in np.linspace(1.0 / 16.0, 15.0 / 16.0, args.points):
        nnz = int(round(d * 16 * args.ncols))
        nnz = max(args.ncols, min(15 * args.ncols, nnz))
        f = WindowFeatures(ncols=args.ncols, density=nnz / (16.0 * args.ncols), computing_intensity=nnz / args.ncols)
        ts = estimate_scalar(f, args.dim, params)
        tt = estimate_tile(f, args.dim, params)
        rows.append((f.density, ts, tt, "scalar" if ts < tt else "tile"))
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["density", "estimate_scalar", "estimate_tile", "winner"])
            for density, ts, tt, winner in rows:
                writer.writerow([repr(density), repr(ts), repr(tt), winner])
    cross = crossover_density(params, args.ncols, args.dim)
    report = RunReport("sweep", inputs={"ncols": args.ncols, "dim": args.dim, "params": args.params or "default"})
    if args.out:
        report.outputs["csv"] = args.out
    report.metrics = {
        "points": len(rows),
        "crossover_density": cross,
        "scalar_wins": sum(1 for r in rows if r[3] == "scalar"),
        "tile_wins": sum(1 for r in rows if r[3] == "tile"),
    }
    return report


def cmd_spmm(args) -> RunReport:
    csr = _load_matrix(args.matrix)
    x = _load_dense(args.dense, csr.num_cols, args.seed)
    if x.rows != csr.num_cols:
        raise ValueError(f"dense operand has {x.rows} rows, matrix needs {csr.num_cols}")
    if args.mode == "scalar":
        result = spmm_scalar(csr, x, precision=args.precision)
    elif args.mode == "tile":
        result = spmm_tile(partition(csr), x, precision=args.precision, threads=args.threads)
    else:
        windows = partition(csr)
        model = _resolve_model(args.model)
        assignment = classify_windows(model, windows)
        result = spmm_hybrid(windows, assignment, x, precision=args.precision, threads=args.threads)
    if args.out:
        np.savetxt(args.out, result.z.data, delimiter=",", fmt="%.17g")
    report = RunReport(
        "spmm",
        inputs={
            "matrix": args.matrix,
            "dense": args.dense,
            "mode": args.mode,
            "precision": args.precision,
            "threads": args.threads,
        },
    )
    if args.out:
        report.outputs["z"] = args.out
    report.metrics = {
        "rows": result.z.rows,
        "dim": result.z.dim,
        "checksum": float(result.z.data.sum(dtype=np.float64)),
        **result.stats.as_dict(),
    }
    if args.stats:
        with open(args.stats, "w", encoding="utf-8") as fh:
            json.dump(_plain(result.stats.as_dict()), fh, sort_keys=True, indent=2)
            fh.write("\n")
        report.outputs["stats"] = args.stats
    return report


def _ci_profile(csr: SparseCsr, model) -> tuple[list[float], int, int]:
    windows = partition(csr)
    feats = _window_feature_rows(windows)
    assignment = classify_windows(model, windows)
    cis = [f.computing_intensity for f, w in zip(feats, windows) if w.nnz > 0]
    return cis, assignment.count(Path.TILE), assignment.count(Path.SCALAR)


def cmd_loa(args) -> RunReport:
    g = _load_graph(args.graph)
    model = _resolve_model(args.model)
    build = build_windows_basic if args.variant == "basic" else build_windows_optimized
    grouping = build(g, vw=args.vw)
    g2, perm = reorder(g, grouping)
    cis_before, tile_before, scalar_before = _ci_profile(g.adjacency, model)
    cis_after, tile_after, scalar_after = _ci_profile(g2.adjacency, model)
    if args.out:
        write_matrix_market(g2.adjacency, args.out)
    if args.perm:
        with open(args.perm, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["old", "new"])
            for old, new in enumerate(perm.tolist()):
                writer.writerow([old, new])
    if args.report:
        detail = {
            "ci_before": cis_before,
            "ci_after": cis_after,
            "tile_windows_before": tile_before,
            "tile_windows_after": tile_after,
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(_plain(detail), fh, sort_keys=True, indent=2)
            fh.write("\n")
    report = RunReport(
        "loa",
        inputs={"graph": args.graph, "vw": args.vw, "variant": args.variant, "model": args.model or "default"},
    )
    for key, value in (("reordered", args.out), ("perm", args.perm), ("detail", args.report)):
        if value:
            report.outputs[key] = value
    report.metrics = {
        "num_vertices": g.num_vertices,
        "nnz": g.adjacency.nnz,
        "groups": len(grouping.groups),
        "mean_ci_before": float(np.mean(cis_before)) if cis_before else 0.0,
        "mean_ci_after": float(np.mean(cis_after)) if cis_after else 0.0,
        "tile_windows_before": tile_before,
        "tile_windows_after": tile_after,
        "scalar_windows_before": scalar_before,
        "scalar_windows_after": scalar_after,
    }
    return report


def cmd_gnn_bench(args) -> RunReport:
    g = _load_graph(args.graph)
    layer = GnnLayer.random(args.din, args.dout, seed=args.seed)
    model = _resolve_model(args.model)
    bench = layer_bench(
        g,
        layer,
        assignment_for=lambda ws: classify_windows(model, ws),
        repeats=args.repeats,
        seed=args.seed,
        kind=args.norm,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(_plain(bench), fh, sort_keys=True, indent=2)
            fh.write("\n")
    report = RunReport(
        "gnn-bench",
        inputs={"graph": args.graph, "din": args.din, "dout": args.dout, "norm": args.norm, "repeats": args.repeats},
    )
    if args.out:
        report.outputs["bench"] = args.out
    # wall-clock seconds land in outputs: they vary run to run, unlike metrics
    report.outputs["seconds_per_iter"] = {
        mode: bench[mode]["seconds_per_iter"] for mode in ("unfused", "fused")
    }
    report.metrics = {
        "num_vertices": bench["num_vertices"],
        "nnz": bench["nnz"],
        "max_rel_diff": bench["max_rel_diff"],
        "unfused_forward_traffic": bench["unfused"]["forward_traffic"],
        "fused_forward_traffic": bench["fused"]["forward_traffic"],
        "unfused_backward_traffic": bench["unfused"]["backward_traffic"],
        "fused_backward_traffic": bench["fused"]["backward_traffic"],
    }
    return report


def cmd_pipeline(args) -> RunReport:
    def stage(name, fn):
        try:
            return fn()
        except PipelineError:
            raise
        except Exception as e:
            raise PipelineError(name, e) from e

    g = stage("load", lambda: _load_graph(args.graph))
    model = stage("load", lambda: _resolve_model(args.model))
    windows = stage("partition", lambda: partition(g.adjacency))
    assignment = stage("classify", lambda: classify_windows(model, windows))
    feats = _window_feature_rows(windows)
    nonempty = [w.nnz > 0 for w in windows]
    mean_ci_before = _mean_nonempty([f.computing_intensity for f in feats], nonempty)
    tile_before = assignment.count(Path.TILE)

    metrics = {
        "num_vertices": g.num_vertices,
        "nnz": g.adjacency.nnz,
        "windows_total": len(windows),
        "mean_ci_before": mean_ci_before,
        "windows_tile_before": tile_before,
        "loa_applied": bool(args.loa),
    }
    csr = g.adjacency
    if args.loa:
        grouping = stage("loa", lambda: build_windows_optimized(g, vw=args.vw))
        g2, _ = stage("loa", lambda: reorder(g, grouping))
        csr = g2.adjacency
        windows = stage("partition", lambda: partition(csr))
        assignment = stage("classify", lambda: classify_windows(model, windows))
        feats = _window_feature_rows(windows)
        nonempty = [w.nnz > 0 for w in windows]
        metrics["mean_ci_after"] = _mean_nonempty([f.computing_intensity for f in feats], nonempty)
        metrics["windows_tile_after"] = assignment.count(Path.TILE)
    x = DenseMatrix.random(csr.num_cols, args.dim, seed=args.seed)
    result = stage(
        "spmm",
        lambda: spmm_hybrid(windows, assignment, x, precision=args.precision, threads=args.threads),
    )
    metrics["checksum"] = float(result.z.data.sum(dtype=np.float64))
    metrics.update(result.stats.as_dict())
    if args.out:
        np.savetxt(args.out, result.z.data, delimiter=",", fmt="%.17g")
    report = RunReport(
        "pipeline",
        inputs={"graph": args.graph, "dim": args.dim, "loa": bool(args.loa), "vw": args.vw, "seed": args.seed},
    )
    if args.out:
        report.outputs["z"] = args.out
    report.metrics = metrics
    return report


# ---------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="rowwin", description=__doc__)
    parser.add_argument("--threads", type=int, default=1, help="worker threads for window execution")
    parser.add_argument("--seed", type=int, default=42, help="seed for any randomized operand")
    parser.add_argument("--precision", choices=["f64", "f32"], default="f64")
    parser.add_argument("--report-file", default=None, help="write the run report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("convert", help="convert between matrix-market and edge-list files")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--from", dest="from_format", choices=["mtx", "edgelist"], default=None)
    p.add_argument("--to", dest="to_format", choices=["mtx", "edgelist"], default=None)
    p.add_argument("--directed", action="store_true", help="treat edge-list input as directed")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("partition-report", help="per-window features of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--window-height", type=int, default=16)
    p.add_argument("--out", default=None, help="CSV path for per-window rows")
    p.set_defaults(func=cmd_partition_report)

    p = sub.add_parser("train-selector", help="train the path selector on synthetic windows")
    p.add_argument("--grid", choices=["default", "dense"], default="default")
    p.add_argument("--provider", default="cost-model", help="cost-model, measured, or csv:<path>")
    p.add_argument("--params", default=None, help="cost params JSON for the cost-model provider")
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--repeats", type=int, default=100, help="timing repeats for the measured provider")
    p.add_argument("--holdout", type=float, default=0.25)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_selector)

    p = sub.add_parser("classify", help="assign an execution path to each window")
    p.add_argument("--matrix", required=True)
    p.add_argument("--model", default=None)
    p.add_argument("--out", default=None, help="CSV path for window_id,path rows")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("calibrate", help="fit cost params from timed synthetic windows")
    p.add_argument("--provider", default="measured", help="measured or csv:<path>")
    p.add_argument("--grid", choices=["default", "dense"], default="default")
    p.add_argument("--dims", default="16,32,64", help="comma-separated feature widths")
    p.add_argument("--repeats", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("sweep", help="estimate both paths across the density band")
    p.add_argument("--ncols", type=int, default=32)
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--points", type=int, default=29)
    p.add_argument("--params", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spmm", help="run one sparse-times-dense product")
    p.add_argument("--matrix", required=True)
    p.add_argument("--dense", required=True, help="CSV path or random:dim=D[,seed=S]")
    p.add_argument("--mode", choices=["scalar", "tile", "hybrid"], default="hybrid")
    p.add_argument("--model", default=None, help="selector model for hybrid mode")
    p.add_argument("--out", default=None, help="CSV path for the product")
    p.add_argument("--stats", default=None, help="JSON path for execution counters")
    p.set_defaults(func=cmd_spmm)

    p = sub.add_parser("loa", help="regroup vertices to raise per-window intensity")
    p.add_argument("--graph", required=True)
    p.add_argument("--vw", type=int, default=128)
    p.add_argument("--variant", choices=["basic", "optimized"], default="optimized")
    p.add_argument("--model", default=None)
    p.add_argument("--out", default=None, help="matrix-market path for the reordered adjacency")
    p.add_argument("--perm", default=None, help="CSV path for the old,new relabeling")
    p.add_argument("--report", default=None, help="JSON path for per-window CI detail")
    p.set_defaults(func=cmd_loa)

    p = sub.add_parser("gnn-bench", help="compare fused and unfused layer execution")
    p.add_argument("--graph", required=True)
    p.add_argument("--din", type=int, default=32)
    p.add_argument("--dout", type=int, default=16)
    p.add_argument("--norm", choices=["gcn", "row", "raw", "gin"], default="gcn")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--model", default=None)
    p.add_argument("--out", default=None, help="JSON path for the full bench record")
    p.set_defaults(func=cmd_gnn_bench)

    p = sub.add_parser("pipeline", help="load, classify, optionally regroup, and multiply")
    p.add_argument("--graph", required=True)
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--loa", action="store_true", help="apply the regrouping stage")
    p.add_argument("--vw", type=int, default=128)
    p.add_argument("--model", default=None)
    p.add_argument("--out", default=None, help="CSV path for the product")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        report = args.func(args)
    except PipelineError as e:
        print(str(e), file=sys.stderr)
        return 3 if isinstance(e.cause, InvariantError) else 2
    except InvariantError as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 3
    except (FormatError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = report.to_json()
    if args.report_file:
        with open(args.report_file, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
