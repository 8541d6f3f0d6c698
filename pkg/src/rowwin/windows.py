"""Fixed-height row windows with column condensation, plus per-window features."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrices import SparseCsr

WINDOW_HEIGHT = 16
TILE_COLS = 8
TILE_DIM = 16


@dataclass(frozen=True)
class RowWindow:
    """A horizontal slice of a CSR matrix with its columns condensed.

    nonzero_cols holds the distinct original column ids appearing in the
    slice, ascending.  cond_cols stores, per entry, the position of that
    entry's column within nonzero_cols, so condensed ids run 0..ncols-1.
    local_ptr is a CSR-style pointer over the window's rows.
    """

    window_id: int
    row_start: int
    row_count: int
    nonzero_cols: np.ndarray
    local_ptr: np.ndarray
    cond_cols: np.ndarray
    values: np.ndarray

    @property
    def nnz(self) -> int:
        return int(self.local_ptr[-1])

    @property
    def ncols(self) -> int:
        return int(self.nonzero_cols.size)

    def row_entries(self, r: int) -> tuple[np.ndarray, np.ndarray]:
        """Condensed column ids and values of local row r."""
        lo, hi = int(self.local_ptr[r]), int(self.local_ptr[r + 1])
        return self.cond_cols[lo:hi], self.values[lo:hi]

    def decondense(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Recover (global_rows, original_cols, values) triples in CSR order."""
        local_rows = np.repeat(np.arange(self.row_count, dtype=np.int64), np.diff(self.local_ptr))
        return local_rows + self.row_start, self.nonzero_cols[self.cond_cols], self.values.copy()

    def validate(self) -> None:
        if self.row_count <= 0:
            raise ValueError("window must span at least one row")
        if self.local_ptr.shape != (self.row_count + 1,) or self.local_ptr[0] != 0:
            raise ValueError("local_ptr must have row_count+1 entries starting at 0")
        if np.any(np.diff(self.local_ptr) < 0):
            raise ValueError("local_ptr must be non-decreasing")
        if self.nonzero_cols.size > 1 and np.any(np.diff(self.nonzero_cols) <= 0):
            raise ValueError("nonzero_cols must be strictly ascending")
        if self.cond_cols.size:
            if self.cond_cols.min() < 0 or self.cond_cols.max() >= self.ncols:
                raise ValueError("condensed column id out of range")
        if self.nnz and self.ncols == 0:
            raise ValueError("entries present but no nonzero columns recorded")
        present = np.unique(self.cond_cols)
        if present.size != self.ncols:
            raise ValueError("every condensed column must be used by some entry")


@dataclass(frozen=True)
class WindowFeatures:
    """Descriptors the path selector and cost model consume."""

    ncols: int
    density: float
    computing_intensity: float


def partition(csr: SparseCsr, window_height: int = WINDOW_HEIGHT) -> list[RowWindow]:
    """Split rows into ceil(num_rows / window_height) consecutive windows.

    The final window may span fewer rows.  Empty row ranges still produce a
    (zero-entry) window so window ids map back to row ranges directly.
    """
    if window_height <= 0:
        raise ValueError("window_height must be positive")
    out: list[RowWindow] = []
    for wid, lo in enumerate(range(0, csr.num_rows, window_height)):
        hi = min(lo + window_height, csr.num_rows)
        e0, e1 = int(csr.row_ptr[lo]), int(csr.row_ptr[hi])
        cols = csr.col_idx[e0:e1]
        nonzero_cols, cond = np.unique(cols, return_inverse=True)
        out.append(
            RowWindow(
                window_id=wid,
                row_start=lo,
                row_count=hi - lo,
                nonzero_cols=nonzero_cols.astype(np.int64),
                local_ptr=(csr.row_ptr[lo : hi + 1] - e0).astype(np.int64),
                cond_cols=cond.astype(np.int64),
                values=csr.values[e0:e1].copy(),
            )
        )
    return out


def features(window: RowWindow) -> WindowFeatures:
    """ncols, fill density of the condensed slab, and entries per distinct column.

    An empty window reports zeros; callers route those to the scalar path and
    skip them during execution.
    """
    nc = window.ncols
    if nc == 0:
        return WindowFeatures(ncols=0, density=0.0, computing_intensity=0.0)
    nnz = window.nnz
    return WindowFeatures(
        ncols=nc,
        density=nnz / (window.row_count * nc),
        computing_intensity=nnz / nc,
    )


def tile_count(window: RowWindow, tile_cols: int = TILE_COLS) -> int:
    """Number of column tiles the tiled path processes: ceil(ncols / tile_cols)."""
    return math.ceil(window.ncols / tile_cols)


def total_rows(windows: list[RowWindow]) -> int:
    """Row count of the matrix the windows were cut from."""
    if not windows:
        return 0
    last = windows[-1]
    return last.row_start + last.row_count
