"""Single graph-convolution layer over the windowed SpMM engine.

Forward: x_next = (A_norm @ X) @ W.  The unfused mode materializes the
aggregation output Z, writes it, and reads it back for the dense update; the
fused mode aggregates one window and multiplies by W in the same pass, so no
intermediate buffer exists.  Z is still retained for training in both modes;
the fused mode accounts for that retention separately as cache_writes.

Traffic numbers count matrix elements, not bytes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from .executors import (
    Assignment,
    Path,
    scalar_window,
    spmm_hybrid,
    tile_window,
)
from .matrices import DenseMatrix, Graph, SparseCsr
from .windows import RowWindow, partition, total_rows


@dataclass(frozen=True)
class GnnLayer:
    weight: DenseMatrix

    @property
    def d_in(self) -> int:
        return self.weight.rows

    @property
    def d_out(self) -> int:
        return self.weight.dim

    @classmethod
    def random(cls, d_in: int, d_out: int, seed: int) -> "GnnLayer":
        rng = np.random.default_rng(seed)
        bound = np.sqrt(6.0 / (d_in + d_out))
        return cls(DenseMatrix(rng.uniform(-bound, bound, size=(d_in, d_out))))


@dataclass
class TrafficReport:
    intermediate_writes: int = 0
    intermediate_reads: int = 0
    cache_writes: int = 0
    pass_launches: int = 0

    def as_dict(self) -> dict:
        return {
            "intermediate_writes": self.intermediate_writes,
            "intermediate_reads": self.intermediate_reads,
            "cache_writes": self.cache_writes,
            "pass_launches": self.pass_launches,
        }


NORMALIZATIONS = ("gcn", "row", "raw", "gin")


def normalize_adj(g: Graph, kind: str = "gcn") -> SparseCsr:
    """Aggregation operator variants.

    gcn: D^{-1/2} (A+I) D^{-1/2} with degrees taken after adding self loops.
    row: D^{-1} A (zero-degree rows stay zero).  raw: A.  gin: A + I.
    """
    if kind not in NORMALIZATIONS:
        raise ValueError(f"kind must be one of {NORMALIZATIONS}, got {kind!r}")
    adj = g.adjacency
    if kind == "raw":
        return adj
    rows, cols, vals = adj.to_coo()
    if kind == "row":
        deg = np.diff(adj.row_ptr).astype(np.float64)
        scale = np.where(deg > 0, 1.0 / np.maximum(deg, 1), 0.0)
        return SparseCsr.from_coo(adj.num_rows, adj.num_cols, rows, cols, vals * scale[rows])
    eye = np.arange(g.num_vertices, dtype=np.int64)
    rows = np.concatenate([rows, eye])
    cols = np.concatenate([cols, eye])
    vals = np.concatenate([vals, np.ones(g.num_vertices)])
    with_loops = SparseCsr.from_coo(adj.num_rows, adj.num_cols, rows, cols, vals)
    if kind == "gin":
        return with_loops
    r, c, v = with_loops.to_coo()
    deg = np.zeros(g.num_vertices, dtype=np.float64)
    np.add.at(deg, r, v)
    inv_sqrt = 1.0 / np.sqrt(deg)
    return SparseCsr.from_coo(adj.num_rows, adj.num_cols, r, c, v * inv_sqrt[r] * inv_sqrt[c])


def _resolve_windows(
    a_norm: SparseCsr,
    windows: list[RowWindow] | None,
    assignment: Assignment | None,
) -> tuple[list[RowWindow], Assignment]:
    if windows is None:
        windows = partition(a_norm)
    if assignment is None:
        assignment = Assignment.uniform(len(windows), Path.SCALAR)
    return windows, assignment


def _window_slice(w: RowWindow) -> slice:
    return slice(w.row_start, w.row_start + w.row_count)


def _aggregate_condensed(w: RowWindow, operand_by_cond: np.ndarray, path: Path) -> np.ndarray:
    """Apply one window's sparse rows to an operand indexed by condensed column."""
    local = replace(w, nonzero_cols=np.arange(w.ncols, dtype=np.int64))
    kernel = tile_window if path is Path.TILE else scalar_window
    return kernel(local, operand_by_cond)


def forward(
    layer: GnnLayer,
    a_norm: SparseCsr,
    x: DenseMatrix,
    mode: str = "unfused",
    assignment: Assignment | None = None,
    windows: list[RowWindow] | None = None,
    threads: int = 1,
) -> tuple[DenseMatrix, DenseMatrix, TrafficReport]:
    """Returns (x_next, z_cache, traffic).  z_cache is the aggregation output A_norm X."""
    if x.dim != layer.d_in:
        raise ValueError(f"X has {x.dim} features, layer expects {layer.d_in}")
    if mode not in ("fused", "unfused"):
        raise ValueError(f"mode must be 'fused' or 'unfused', got {mode!r}")
    windows, assignment = _resolve_windows(a_norm, windows, assignment)
    n = total_rows(windows)
    w_mat = layer.weight.data
    traffic = TrafficReport()
    if mode == "unfused":
        result = spmm_hybrid(windows, assignment, x, threads=threads)
        z = result.z
        x_next = DenseMatrix(z.data @ w_mat)
        traffic.intermediate_writes = n * layer.d_in
        traffic.intermediate_reads = n * layer.d_in
        traffic.pass_launches = 2
        return x_next, z, traffic
    z_cache = np.zeros((n, layer.d_in))
    out = np.zeros((n, layer.d_out))
    for w in windows:
        if w.nnz == 0:
            continue
        path = assignment.path(w.window_id)
        kernel = tile_window if path is Path.TILE else scalar_window
        z_w = kernel(w, x.data)
        out[_window_slice(w)] = z_w @ w_mat
        z_cache[_window_slice(w)] = z_w
    traffic.cache_writes = n * layer.d_in
    traffic.pass_launches = 1
    return DenseMatrix(out), DenseMatrix(z_cache), traffic


def backward(
    layer: GnnLayer,
    a_norm: SparseCsr,
    z_cache: DenseMatrix,
    grad_out: DenseMatrix,
    mode: str = "unfused",
    assignment: Assignment | None = None,
    threads: int = 1,
) -> tuple[DenseMatrix, DenseMatrix, TrafficReport]:
    """Gradients for x_next = (A_norm X) W.

    grad_w = Z^T grad_out; grad_x = A_norm^T (grad_out W^T).  The aggregation
    runs over the transpose, which equals A_norm itself for the symmetric
    normalizations.  grad_w accumulates in ascending window order in fused mode.
    """
    if mode not in ("fused", "unfused"):
        raise ValueError(f"mode must be 'fused' or 'unfused', got {mode!r}")
    if a_norm.num_rows != a_norm.num_cols:
        raise ValueError("backward requires a square aggregation operator")
    rows, cols, vals = a_norm.to_coo()
    a_t = SparseCsr.from_coo(a_norm.num_cols, a_norm.num_rows, cols, rows, vals)
    windows, assignment = _resolve_windows(a_t, None, assignment)
    n = total_rows(windows)
    w_mat = layer.weight.data
    traffic = TrafficReport()
    if mode == "unfused":
        grad_w = z_cache.data.T @ grad_out.data
        grad_z = grad_out.data @ w_mat.T
        traffic.intermediate_writes = a_norm.num_rows * layer.d_in
        traffic.intermediate_reads = a_norm.num_rows * layer.d_in
        traffic.pass_launches = 2
        result = spmm_hybrid(windows, assignment, DenseMatrix(grad_z), threads=threads)
        return DenseMatrix(grad_w), result.z, traffic
    grad_w = np.zeros((layer.d_in, layer.d_out))
    grad_x = np.zeros((n, layer.d_in))
    for w in windows:
        sl = _window_slice(w)
        grad_w += z_cache.data[sl].T @ grad_out.data[sl]
        if w.nnz == 0:
            continue
        gathered = grad_out.data[w.nonzero_cols] @ w_mat.T
        grad_x[sl] = _aggregate_condensed(w, gathered, assignment.path(w.window_id))
    traffic.pass_launches = 1
    return DenseMatrix(grad_w), DenseMatrix(grad_x), traffic


def layer_bench(
    g: Graph,
    layer: GnnLayer,
    assignment_for=None,
    repeats: int = 3,
    seed: int = 0,
    kind: str = "gcn",
) -> dict:
    """Run both modes end to end and report times, traffic, and cross-mode drift."""
    a_norm = normalize_adj(g, kind)
    x = DenseMatrix.random(g.num_vertices, layer.d_in, seed=seed)
    windows = partition(a_norm)
    assignment = assignment_for(windows) if assignment_for is not None else None
    report: dict = {"num_vertices": g.num_vertices, "nnz": a_norm.nnz, "repeats": repeats}
    outputs = {}
    for mode in ("unfused", "fused"):
        t0 = time.perf_counter()
        for _ in range(repeats):
            x_next, z, fwd_traffic = forward(
                layer, a_norm, x, mode=mode, assignment=assignment, windows=windows
            )
            grad_w, grad_x, bwd_traffic = backward(
                layer, a_norm, z, x_next, mode=mode, assignment=assignment
            )
        elapsed = (time.perf_counter() - t0) / repeats
        outputs[mode] = (x_next, grad_w, grad_x)
        report[mode] = {
            "seconds_per_iter": elapsed,
            "forward_traffic": fwd_traffic.as_dict(),
            "backward_traffic": bwd_traffic.as_dict(),
        }
    diffs = []
    for a, b in zip(outputs["unfused"], outputs["fused"]):
        denom = max(float(np.abs(a.data).max()), 1e-300)
        diffs.append(float(np.abs(a.data - b.data).max()) / denom)
    report["max_rel_diff"] = max(diffs)
    return report
