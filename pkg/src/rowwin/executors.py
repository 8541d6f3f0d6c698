"""Scalar and tiled SpMM execution paths plus the per-window hybrid dispatcher.

Both paths compute exact products; they differ in traversal shape.  The scalar
path walks each row's entries directly.  The tiled path materializes the
condensed window as a dense row_count x (8*ceil(ncols/8)) slab, gathers the
matching X rows, and accumulates 8-column blocks in ascending block order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .matrices import DenseMatrix, SparseCsr
from .windows import RowWindow, TILE_COLS, TILE_DIM, WINDOW_HEIGHT, partition, tile_count, total_rows

_DTYPES = {"f64": np.float64, "f32": np.float32}


class Path(Enum):
    SCALAR = "scalar"
    TILE = "tile"


@dataclass(frozen=True)
class Assignment:
    """Per-window path choice, indexed by window_id.  Code 0 = scalar, 1 = tile."""

    codes: np.ndarray

    def __post_init__(self):
        codes = np.asarray(self.codes, dtype=np.uint8)
        if codes.ndim != 1 or (codes.size and codes.max() > 1):
            raise ValueError("assignment codes must be a 1-D array of 0/1")
        object.__setattr__(self, "codes", codes)

    def __len__(self) -> int:
        return int(self.codes.size)

    def path(self, window_id: int) -> Path:
        return Path.TILE if self.codes[window_id] else Path.SCALAR

    def count(self, path: Path) -> int:
        tiles = int(self.codes.sum())
        return tiles if path is Path.TILE else len(self) - tiles

    @classmethod
    def from_paths(cls, paths) -> "Assignment":
        return cls(np.array([1 if p is Path.TILE else 0 for p in paths], dtype=np.uint8))

    @classmethod
    def uniform(cls, n: int, path: Path) -> "Assignment":
        fill = 1 if path is Path.TILE else 0
        return cls(np.full(n, fill, dtype=np.uint8))


@dataclass
class ExecStats:
    """Execution counters; entries_* partitions the matrix nnz across paths."""

    windows_scalar: int = 0
    windows_tile: int = 0
    entries_scalar: int = 0
    entries_tile: int = 0
    tiles_processed: int = 0

    def merge(self, other: "ExecStats") -> None:
        self.windows_scalar += other.windows_scalar
        self.windows_tile += other.windows_tile
        self.entries_scalar += other.entries_scalar
        self.entries_tile += other.entries_tile
        self.tiles_processed += other.tiles_processed

    def as_dict(self) -> dict:
        return {
            "windows_scalar": self.windows_scalar,
            "windows_tile": self.windows_tile,
            "entries_scalar": self.entries_scalar,
            "entries_tile": self.entries_tile,
            "tiles_processed": self.tiles_processed,
        }


@dataclass(frozen=True)
class SpmmResult:
    z: DenseMatrix
    stats: ExecStats


def _resolve_dtype(precision: str) -> np.dtype:
    try:
        return _DTYPES[precision]
    except KeyError:
        raise ValueError(f"precision must be one of {sorted(_DTYPES)}, got {precision!r}") from None


def scalar_window(window: RowWindow, x_data: np.ndarray) -> np.ndarray:
    """Per-row traversal of one window.  x_data rows are indexed by original col id."""
    out = np.zeros((window.row_count, x_data.shape[1]), dtype=x_data.dtype)
    for r in range(window.row_count):
        lo, hi = int(window.local_ptr[r]), int(window.local_ptr[r + 1])
        if hi > lo:
            cols = window.nonzero_cols[window.cond_cols[lo:hi]]
            out[r] = window.values[lo:hi].astype(x_data.dtype, copy=False) @ x_data[cols]
    return out


def tile_window(
    window: RowWindow,
    x_data: np.ndarray,
    tile_cols: int = TILE_COLS,
    dim_tile: int = TILE_DIM,
) -> np.ndarray:
    """Condensed dense-slab traversal of one window.

    Zero-pads condensed columns up to a multiple of tile_cols, gathers the
    matching x rows into a compacted operand, and accumulates one tile_cols-wide
    block at a time in ascending block order.  Output feature columns are
    processed in dim_tile chunks; chunks are independent so this only fixes the
    traversal shape, not the arithmetic.
    """
    dim = x_data.shape[1]
    out = np.zeros((window.row_count, dim), dtype=x_data.dtype)
    if window.nnz == 0:
        return out
    nb = tile_count(window, tile_cols)
    padded = nb * tile_cols
    slab = np.zeros((window.row_count, padded), dtype=x_data.dtype)
    local_rows = np.repeat(np.arange(window.row_count, dtype=np.int64), np.diff(window.local_ptr))
    slab[local_rows, window.cond_cols] = window.values.astype(x_data.dtype, copy=False)
    gathered = np.zeros((padded, dim), dtype=x_data.dtype)
    gathered[: window.ncols] = x_data[window.nonzero_cols]
    for d0 in range(0, dim, dim_tile):
        d1 = min(d0 + dim_tile, dim)
        for b in range(nb):
            c0 = b * tile_cols
            out[:, d0:d1] += slab[:, c0 : c0 + tile_cols] @ gathered[c0 : c0 + tile_cols, d0:d1]
    return out


def _window_rows(window: RowWindow) -> slice:
    return slice(window.row_start, window.row_start + window.row_count)


def _window_stats(window: RowWindow, path: Path, tile_cols: int) -> ExecStats:
    s = ExecStats()
    if path is Path.SCALAR:
        s.windows_scalar = 1
        s.entries_scalar = window.nnz
    else:
        s.windows_tile = 1
        s.entries_tile = window.nnz
        s.tiles_processed = tile_count(window, tile_cols)
    return s


def _run_windows(
    windows: list[RowWindow],
    codes: np.ndarray,
    x_data: np.ndarray,
    z: np.ndarray,
    threads: int,
    tile_cols: int,
    dim_tile: int,
) -> ExecStats:
    """Execute non-empty windows into disjoint row slices of z; fold stats in window order."""
    live = [w for w in windows if w.nnz > 0]

    def run_one(w: RowWindow) -> ExecStats:
        path = Path.TILE if codes[w.window_id] else Path.SCALAR
        if path is Path.TILE:
            z[_window_rows(w)] = tile_window(w, x_data, tile_cols, dim_tile)
        else:
            z[_window_rows(w)] = scalar_window(w, x_data)
        return _window_stats(w, path, tile_cols)

    if threads <= 1:
        per_window = [run_one(w) for w in live]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_window = list(pool.map(run_one, live))
    total = ExecStats()
    for s in per_window:
        total.merge(s)
    return total


def spmm_scalar(
    csr: SparseCsr,
    x: DenseMatrix,
    precision: str = "f64",
    window_height: int = WINDOW_HEIGHT,
) -> SpmmResult:
    """All rows take the scalar path.  Window counters reflect window_height slices."""
    if csr.num_cols != x.rows:
        raise ValueError(f"dimension mismatch: matrix has {csr.num_cols} cols, X has {x.rows} rows")
    dtype = _resolve_dtype(precision)
    x_data = x.data.astype(dtype, copy=False)
    z = np.zeros((csr.num_rows, x.dim), dtype=dtype)
    for i in range(csr.num_rows):
        lo, hi = int(csr.row_ptr[i]), int(csr.row_ptr[i + 1])
        if hi > lo:
            cols = csr.col_idx[lo:hi]
            z[i] = csr.values[lo:hi].astype(dtype, copy=False) @ x_data[cols]
    stats = ExecStats(entries_scalar=csr.nnz)
    for lo in range(0, csr.num_rows, window_height):
        hi = min(lo + window_height, csr.num_rows)
        if csr.row_ptr[hi] > csr.row_ptr[lo]:
            stats.windows_scalar += 1
    return SpmmResult(DenseMatrix(z), stats)


def spmm_tile(
    windows: list[RowWindow],
    x: DenseMatrix,
    precision: str = "f64",
    tile_cols: int = TILE_COLS,
    dim_tile: int = TILE_DIM,
    threads: int = 1,
) -> SpmmResult:
    """All windows take the tiled path.  Empty windows are skipped and uncounted."""
    _check_window_bounds(windows, x)
    dtype = _resolve_dtype(precision)
    x_data = x.data.astype(dtype, copy=False)
    z = np.zeros((total_rows(windows), x.dim), dtype=dtype)
    codes = np.ones(len(windows), dtype=np.uint8)
    stats = _run_windows(windows, codes, x_data, z, threads, tile_cols, dim_tile)
    return SpmmResult(DenseMatrix(z), stats)


def spmm_hybrid(
    windows: list[RowWindow],
    assignment: Assignment,
    x: DenseMatrix,
    precision: str = "f64",
    threads: int = 1,
    tile_cols: int = TILE_COLS,
    dim_tile: int = TILE_DIM,
) -> SpmmResult:
    """Dispatch each window to its assigned path and stitch the output rows."""
    if len(assignment) != len(windows):
        raise ValueError(f"assignment covers {len(assignment)} windows, expected {len(windows)}")
    _check_window_bounds(windows, x)
    dtype = _resolve_dtype(precision)
    x_data = x.data.astype(dtype, copy=False)
    z = np.zeros((total_rows(windows), x.dim), dtype=dtype)
    stats = _run_windows(windows, assignment.codes, x_data, z, threads, tile_cols, dim_tile)
    return SpmmResult(DenseMatrix(z), stats)


def _check_window_bounds(windows: list[RowWindow], x: DenseMatrix) -> None:
    for w in windows:
        if w.ncols and int(w.nonzero_cols[-1]) >= x.rows:
            raise ValueError(
                f"window {w.window_id} references column {int(w.nonzero_cols[-1])}"
                f" but X has {x.rows} rows"
            )


def spmm_auto(
    csr: SparseCsr,
    x: DenseMatrix,
    assignment_for,
    precision: str = "f64",
    threads: int = 1,
) -> SpmmResult:
    """Partition, classify via assignment_for(windows), and run the hybrid product."""
    windows = partition(csr)
    return spmm_hybrid(windows, assignment_for(windows), x, precision=precision, threads=threads)
