"""Trainable path selector: logistic regression on (ncols, density).

Training data comes from synthetic 16-row windows spanning the feasible
(ncols, density) grid, labeled by whichever timing provider is supplied.
Label 1 means the scalar path was faster; ties go to the tile path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .executors import Assignment, Path
from .windows import RowWindow, WindowFeatures, features

GEN_ROWS = 16
GEN_MAX_NCOLS = 130
MAX_FILL = GEN_ROWS - 1  # at most 15 entries per column on a 16-row window


@dataclass(frozen=True)
class TrainingSample:
    ncols: int
    density: float
    t_scalar: float
    t_tile: float
    label: int  # 1 = scalar path faster

    @classmethod
    def from_timings(cls, ncols: int, density: float, t_scalar: float, t_tile: float) -> "TrainingSample":
        return cls(ncols, density, t_scalar, t_tile, label=1 if t_scalar < t_tile else 0)


@dataclass(frozen=True)
class SelectorModel:
    """Logistic scorer over z-scored (ncols, density); positive score picks scalar."""

    w_ncols: float
    w_density: float
    bias: float
    feature_means: tuple[float, float]
    feature_scales: tuple[float, float]

    def score(self, ncols: float, density: float) -> float:
        zn = (ncols - self.feature_means[0]) / self.feature_scales[0]
        zd = (density - self.feature_means[1]) / self.feature_scales[1]
        return self.w_ncols * zn + self.w_density * zd + self.bias

    def decide(self, ncols: int, density: float) -> Path:
        if ncols == 0:
            return Path.SCALAR
        return Path.SCALAR if self.score(ncols, density) > 0 else Path.TILE


def classify(model: SelectorModel, f: WindowFeatures) -> Path:
    return model.decide(f.ncols, f.density)


def classify_windows(model: SelectorModel, windows: list[RowWindow]) -> Assignment:
    return Assignment.from_paths(classify(model, features(w)) for w in windows)


def generate_synthetic(ncols: int, nnz: int, seed: int) -> RowWindow:
    """Random 16-row window with exactly ncols distinct columns and nnz entries.

    Every column receives one entry at a uniform random row first; the rest go
    to uniform random free cells.  Values are 1.0.
    """
    if not 1 <= ncols <= GEN_MAX_NCOLS:
        raise ValueError(f"ncols must be in [1, {GEN_MAX_NCOLS}]")
    if not ncols <= nnz <= MAX_FILL * ncols:
        raise ValueError(f"nnz must be in [ncols, {MAX_FILL}*ncols]")
    rng = np.random.default_rng(seed)
    first_rows = rng.integers(0, GEN_ROWS, size=ncols)
    taken = first_rows * ncols + np.arange(ncols)
    free = np.setdiff1d(np.arange(GEN_ROWS * ncols), taken, assume_unique=False)
    extra = rng.choice(free, size=nnz - ncols, replace=False)
    cells = np.sort(np.concatenate([taken, extra]))
    rows, cols = cells // ncols, cells % ncols
    counts = np.bincount(rows, minlength=GEN_ROWS)
    local_ptr = np.zeros(GEN_ROWS + 1, dtype=np.int64)
    np.cumsum(counts, out=local_ptr[1:])
    return RowWindow(
        window_id=0,
        row_start=0,
        row_count=GEN_ROWS,
        nonzero_cols=np.arange(ncols, dtype=np.int64),
        local_ptr=local_ptr,
        cond_cols=cols.astype(np.int64),
        values=np.ones(nnz, dtype=np.float64),
    )


def _density_levels(count: int = 8) -> np.ndarray:
    return np.linspace(1.0 / GEN_ROWS, MAX_FILL / GEN_ROWS, count)


def _nnz_for(ncols: int, density: float) -> int:
    nnz = int(round(density * GEN_ROWS * ncols))
    return int(np.clip(nnz, ncols, MAX_FILL * ncols))


def default_grid(seeds: int = 3) -> list[tuple[int, int, int]]:
    """Coarse (ncols, nnz, seed) grid: 20 column counts x 8 densities x seeds."""
    ncols_values = [1, 2, 4, 8] + list(range(16, 129, 8)) + [GEN_MAX_NCOLS]
    return _build_grid(ncols_values, seeds)


def dense_grid(seeds: int = 5) -> list[tuple[int, int, int]]:
    """Full-resolution grid: every ncols in 1..130 x 8 densities x seeds."""
    return _build_grid(list(range(1, GEN_MAX_NCOLS + 1)), seeds)


def _build_grid(ncols_values: list[int], seeds: int) -> list[tuple[int, int, int]]:
    grid = []
    counter = 0
    for nc in ncols_values:
        for d in _density_levels():
            for _ in range(seeds):
                grid.append((nc, _nnz_for(nc, d), counter))
                counter += 1
    return grid


def collect_samples(
    grid: list[tuple[int, int, int]],
    provider,
    dim: int = 32,
) -> list[TrainingSample]:
    """Generate each grid window, time both paths via the provider, and label."""
    samples = []
    for ncols, nnz, seed in grid:
        w = generate_synthetic(ncols, nnz, seed)
        f = features(w)
        t_scalar, t_tile = provider(w, dim)
        samples.append(TrainingSample.from_timings(f.ncols, f.density, t_scalar, t_tile))
    return samples


def analytic_samples(
    params,
    ncols_values,
    density_levels,
    dim: int = 32,
) -> list[TrainingSample]:
    """Label a feature grid straight from the cost estimates.

    The analytic estimates are pure functions of (ncols, nnz), so no window
    has to be materialized.  Unlike generate_synthetic this places no upper
    bound on ncols, which lets a model be fit across the whole feature range
    a real matrix can produce.
    """
    from .costmodel import estimate_scalar, estimate_tile

    samples = []
    for nc in ncols_values:
        for d in density_levels:
            nnz = _nnz_for(nc, d)
            f = WindowFeatures(
                ncols=nc,
                density=nnz / (GEN_ROWS * nc),
                computing_intensity=nnz / nc,
            )
            t_scalar = estimate_scalar(f, dim, params)
            t_tile = estimate_tile(f, dim, params)
            samples.append(TrainingSample.from_timings(f.ncols, f.density, t_scalar, t_tile))
    return samples


def train(
    samples: list[TrainingSample],
    learning_rate: float = 0.1,
    epochs: int = 50_000,
    tol: float = 1e-8,
    seed: int = 0,
) -> SelectorModel:
    """Full-batch gradient descent on cross-entropy until the loss plateaus."""
    if not samples:
        raise ValueError("no training samples")
    y = np.array([s.label for s in samples], dtype=np.float64)
    if y.min() == y.max():
        raise ValueError("training data contains a single class")
    feats = np.array([[s.ncols, s.density] for s in samples], dtype=np.float64)
    means = feats.mean(axis=0)
    scales = feats.std(axis=0)
    scales[scales == 0.0] = 1.0
    fz = (feats - means) / scales

    rng = np.random.default_rng(seed)
    w = rng.normal(0.0, 0.01, size=2)
    b = 0.0
    prev_loss = np.inf
    n = len(samples)
    for _ in range(epochs):
        z = fz @ w + b
        p = 1.0 / (1.0 + np.exp(-z))
        # stable cross-entropy: log(1+e^z) - y*z
        loss = float(np.mean(np.logaddexp(0.0, z) - y * z))
        grad = p - y
        w -= learning_rate * (fz.T @ grad) / n
        b -= learning_rate * float(grad.mean())
        if abs(prev_loss - loss) < tol:
            break
        prev_loss = loss
    return SelectorModel(
        w_ncols=float(w[0]),
        w_density=float(w[1]),
        bias=float(b),
        feature_means=(float(means[0]), float(means[1])),
        feature_scales=(float(scales[0]), float(scales[1])),
    )


def holdout_split(
    samples: list[TrainingSample], frac: float = 0.25, seed: int = 0
) -> tuple[list[TrainingSample], list[TrainingSample]]:
    """Shuffled train/held-out split; held-out gets round(frac * n) samples."""
    if not 0.0 < frac < 1.0:
        raise ValueError("frac must be in (0, 1)")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(samples))
    n_hold = int(round(frac * len(samples)))
    hold_idx = set(order[:n_hold].tolist())
    train_part = [s for i, s in enumerate(samples) if i not in hold_idx]
    hold_part = [samples[i] for i in sorted(hold_idx)]
    return train_part, hold_part


def accuracy(model: SelectorModel, samples: list[TrainingSample]) -> float:
    if not samples:
        raise ValueError("no samples to score")
    hits = sum(
        1
        for s in samples
        if (model.decide(s.ncols, s.density) is Path.SCALAR) == (s.label == 1)
    )
    return hits / len(samples)


def save_model(model: SelectorModel, path: str, provenance: dict | None = None) -> None:
    doc: dict = {
        "version": 1,
        "w_ncols": model.w_ncols,
        "w_density": model.w_density,
        "bias": model.bias,
        "feature_means": list(model.feature_means),
        "feature_scales": list(model.feature_scales),
    }
    if provenance is not None:
        doc["provenance"] = provenance
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _model_from_doc(doc: dict) -> SelectorModel:
    required = ("w_ncols", "w_density", "bias", "feature_means", "feature_scales")
    missing = [k for k in required if k not in doc]
    if missing:
        raise ValueError(f"selector model missing fields: {missing}")
    means = doc["feature_means"]
    scales = doc["feature_scales"]
    if len(means) != 2 or len(scales) != 2:
        raise ValueError("feature_means/feature_scales must have two entries")
    return SelectorModel(
        w_ncols=float(doc["w_ncols"]),
        w_density=float(doc["w_density"]),
        bias=float(doc["bias"]),
        feature_means=(float(means[0]), float(means[1])),
        feature_scales=(float(scales[0]), float(scales[1])),
    )


def load_model(path: str) -> SelectorModel:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return _model_from_doc(doc)


@lru_cache(maxsize=1)
def default_model() -> SelectorModel:
    """Packaged selector trained against the packaged cost-model defaults."""
    text = resources.files("rowwin").joinpath("data/default_selector.json").read_text()
    return _model_from_doc(json.loads(text))
