"""Per-window cost estimates for both execution paths, calibration, and timing providers.

The model is analytic and deliberately simple:

  scalar:  alpha_scalar + beta_scalar * nnz * dim
  tile:    alpha_tile   + beta_tile  * ceil(ncols/8) * ceil(dim/16)
                        + gamma_tile * ncols * ceil(dim/16)

The tile estimate depends only on the condensed column count (block compute
plus operand loading), never on density.  The scalar estimate depends only on
the entry count.  Costs are in abstract units unless calibrated on a host.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .executors import scalar_window, tile_window
from .windows import RowWindow, TILE_COLS, TILE_DIM, WindowFeatures, features

PARAM_FIELDS = ("alpha_scalar", "beta_scalar", "alpha_tile", "beta_tile", "gamma_tile")


@dataclass(frozen=True)
class CostParams:
    alpha_scalar: float
    beta_scalar: float
    alpha_tile: float
    beta_tile: float
    gamma_tile: float

    def validate(self) -> None:
        for name in PARAM_FIELDS:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.beta_scalar <= 0 or self.beta_tile <= 0:
            raise ValueError("beta_scalar and beta_tile must be positive")

    def as_dict(self) -> dict:
        return {name: float(getattr(self, name)) for name in PARAM_FIELDS}

    @classmethod
    def from_dict(cls, d: dict) -> "CostParams":
        missing = [k for k in PARAM_FIELDS if k not in d]
        if missing:
            raise ValueError(f"cost params missing fields: {missing}")
        return cls(**{k: float(d[k]) for k in PARAM_FIELDS})


def _entry_count(f: WindowFeatures) -> int:
    # ncols and computing_intensity jointly encode nnz; round restores the integer
    # exactly so the estimate cannot drift with ncols at fixed nnz.
    return int(round(f.computing_intensity * f.ncols))


def estimate_scalar(f: WindowFeatures, dim: int, params: CostParams) -> float:
    return params.alpha_scalar + params.beta_scalar * _entry_count(f) * dim


def estimate_tile(
    f: WindowFeatures,
    dim: int,
    params: CostParams,
    tile_cols: int = TILE_COLS,
    dim_tile: int = TILE_DIM,
) -> float:
    blocks = math.ceil(f.ncols / tile_cols)
    chunks = math.ceil(dim / dim_tile)
    return params.alpha_tile + params.beta_tile * blocks * chunks + params.gamma_tile * f.ncols * chunks


def mem_to_compute_ratio(params: CostParams, ncols: int, tile_cols: int = TILE_COLS) -> float:
    """Ratio of the tile path's operand-loading term to its block-compute term.

    The ceil(dim/16) chunk factor multiplies both terms, so the ratio is
    dim-independent.
    """
    if ncols <= 0:
        raise ValueError("ncols must be positive")
    return (params.gamma_tile * ncols) / (params.beta_tile * math.ceil(ncols / tile_cols))


def crossover_density(
    params: CostParams,
    ncols: int,
    dim: int,
    window_height: int = 16,
) -> float | None:
    """Density where the two estimates intersect for a window of given ncols.

    Returns the crossing point if it lies strictly inside the feasible band
    (one entry per column up to window_height-1 entries per cell row), else None.
    """
    f_probe = WindowFeatures(ncols=ncols, density=0.0, computing_intensity=0.0)
    tile_cost = estimate_tile(f_probe, dim, params)
    if params.beta_scalar == 0 or ncols <= 0:
        return None
    nnz_star = (tile_cost - params.alpha_scalar) / (params.beta_scalar * dim)
    d_star = nnz_star / (window_height * ncols)
    lo, hi = 1.0 / window_height, (window_height - 1.0) / window_height
    if lo < d_star < hi:
        return float(d_star)
    return None


class AnalyticProvider:
    """TimingProvider backed by the cost model itself."""

    def __init__(self, params: CostParams):
        params.validate()
        self.params = params

    def __call__(self, window: RowWindow, dim: int) -> tuple[float, float]:
        f = features(window)
        return estimate_scalar(f, dim, self.params), estimate_tile(f, dim, self.params)


def measured_cpu_provider(
    window: RowWindow,
    dim: int,
    repeats: int = 100,
    seed: int = 0,
) -> tuple[float, float]:
    """Wall-clock both paths on this host with a seeded random operand.

    One warm-up run per path is excluded; the mean of `repeats` timed runs is
    returned, in seconds.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    rng = np.random.default_rng(seed)
    x_rows = int(window.nonzero_cols[-1]) + 1 if window.ncols else 1
    x_data = rng.uniform(-1.0, 1.0, size=(x_rows, dim))
    out = []
    for kernel in (scalar_window, tile_window):
        kernel(window, x_data)
        t0 = time.perf_counter()
        for _ in range(repeats):
            kernel(window, x_data)
        out.append((time.perf_counter() - t0) / repeats)
    return out[0], out[1]


class MeasuredCpuProvider:
    """TimingProvider wrapper with repeats/seed fixed at construction."""

    def __init__(self, repeats: int = 100, seed: int = 0):
        self.repeats = repeats
        self.seed = seed

    def __call__(self, window: RowWindow, dim: int) -> tuple[float, float]:
        return measured_cpu_provider(window, dim, repeats=self.repeats, seed=self.seed)


class CsvProvider:
    """TimingProvider reading a table with columns ncols,density,dim,t_scalar,t_tile.

    Lookup is exact on (ncols, dim) and nearest-neighbor on density.
    """

    def __init__(self, path: str):
        self.table: dict[tuple[int, int], list[tuple[float, float, float]]] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            required = {"ncols", "density", "dim", "t_scalar", "t_tile"}
            if reader.fieldnames is None or not required.issubset(reader.fieldnames):
                raise ValueError(f"timings csv must have columns {sorted(required)}")
            for row in reader:
                key = (int(row["ncols"]), int(row["dim"]))
                self.table.setdefault(key, []).append(
                    (float(row["density"]), float(row["t_scalar"]), float(row["t_tile"]))
                )
        if not self.table:
            raise ValueError("timings csv contains no rows")

    def __call__(self, window: RowWindow, dim: int) -> tuple[float, float]:
        f = features(window)
        key = (f.ncols, dim)
        if key not in self.table:
            raise ValueError(f"no timing rows for ncols={f.ncols}, dim={dim}")
        rows = self.table[key]
        _, ts, tt = min(rows, key=lambda r: abs(r[0] - f.density))
        return ts, tt


def calibrate(samples: list[tuple[WindowFeatures, int, float, float]]) -> CostParams:
    """Least-squares fit of the five parameters, clamped to be nonnegative.

    Each sample contributes one scalar-path and one tile-path observation.
    """
    if len(samples) < 3:
        raise ValueError("need at least 3 samples to calibrate")
    a_scalar, y_scalar, a_tile, y_tile = [], [], [], []
    for f, dim, t_scalar, t_tile in samples:
        chunks = math.ceil(dim / TILE_DIM)
        a_scalar.append([1.0, _entry_count(f) * dim])
        y_scalar.append(t_scalar)
        a_tile.append([1.0, math.ceil(f.ncols / TILE_COLS) * chunks, f.ncols * chunks])
        y_tile.append(t_tile)
    sol = {}
    for name, a, y, nparams in (("scalar", a_scalar, y_scalar, 2), ("tile", a_tile, y_tile, 3)):
        a = np.asarray(a)
        if len(np.unique(a, axis=0)) < nparams:
            raise ValueError(f"rank-deficient design for {name} path: too few distinct samples")
        coef, _, rank, _ = np.linalg.lstsq(a, np.asarray(y), rcond=None)
        if rank < nparams:
            raise ValueError(f"rank-deficient design for {name} path")
        sol[name] = np.maximum(coef, 0.0)
    params = CostParams(
        alpha_scalar=float(sol["scalar"][0]),
        beta_scalar=float(sol["scalar"][1]),
        alpha_tile=float(sol["tile"][0]),
        beta_tile=float(sol["tile"][1]),
        gamma_tile=float(sol["tile"][2]),
    )
    return params


def fit_report(samples: list[tuple[WindowFeatures, int, float, float]], params: CostParams) -> dict:
    """R-squared of each path's fit, for calibration diagnostics."""

    def r2(actual, predicted):
        actual = np.asarray(actual)
        predicted = np.asarray(predicted)
        ss_res = float(np.sum((actual - predicted) ** 2))
        ss_tot = float(np.sum((actual - actual.mean()) ** 2))
        return 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0

    ys, ps, yt, pt = [], [], [], []
    for f, dim, t_scalar, t_tile in samples:
        ys.append(t_scalar)
        ps.append(estimate_scalar(f, dim, params))
        yt.append(t_tile)
        pt.append(estimate_tile(f, dim, params))
    return {"r2_scalar": r2(ys, ps), "r2_tile": r2(yt, pt), "n_samples": len(samples)}


def save_params(params: CostParams, path: str, provenance: dict | None = None) -> None:
    params.validate()
    doc: dict = {"version": 1, **params.as_dict()}
    if provenance is not None:
        doc["provenance"] = provenance
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_params(path: str) -> CostParams:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    params = CostParams.from_dict(doc)
    params.validate()
    return params


@lru_cache(maxsize=1)
def default_cost_params() -> CostParams:
    """Packaged defaults encoding the reference cost structure (abstract units)."""
    text = resources.files("rowwin").joinpath("data/default_cost_params.json").read_text()
    params = CostParams.from_dict(json.loads(text))
    params.validate()
    return params
