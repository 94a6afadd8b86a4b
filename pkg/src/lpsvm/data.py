"""Seeded toy-data generation, CSV ingestion, standardization and stratified folds.

The CSV format, shared by the loader and writer: comma-separated, LF
newlines, lines starting with '#' ignored, optional single header row; the
first data column is the label (+1/-1, a bare 1 also accepted), remaining
columns are decimal floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import LabeledDataset

__all__ = [
    "ToySpec",
    "FoldSplit",
    "gen_toy",
    "load_csv",
    "save_csv",
    "kfold",
    "standardize",
]

_LABELS = {"+1": 1.0, "1": 1.0, "-1": -1.0, "−1": -1.0}


@dataclass(frozen=True)
class ToySpec:
    """Two overlapping Gaussian blobs in the plane.

    Defaults give non-separable classes: means two standard deviations
    apart with unit isotropic spread, 50 points per class.
    """

    seed: int = 0
    n_per_class: int = 50
    mean_pos: tuple[float, float] = (2.0, 2.0)
    mean_neg: tuple[float, float] = (0.0, 0.0)
    cov_scale: float = 1.0

    def __post_init__(self):
        if self.n_per_class < 1:
            raise ValueError(f"n_per_class must be >= 1, got {self.n_per_class}")
        if not (math.isfinite(self.cov_scale) and self.cov_scale > 0):
            raise ValueError(f"cov_scale must be positive, got {self.cov_scale}")


def gen_toy(spec: ToySpec) -> LabeledDataset:
    """Deterministic toy dataset for the given spec.

    Uses PCG64 with numpy's ziggurat Gaussian transform, so a fixed seed
    reproduces the same bytes on every platform.  The positive class is
    drawn first.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    pos = rng.normal(loc=spec.mean_pos, scale=spec.cov_scale, size=(spec.n_per_class, 2))
    neg = rng.normal(loc=spec.mean_neg, scale=spec.cov_scale, size=(spec.n_per_class, 2))
    X = np.vstack([pos, neg])
    y = np.concatenate([np.ones(spec.n_per_class), -np.ones(spec.n_per_class)])
    return LabeledDataset(X, y)


def load_csv(path, has_header: bool = False) -> LabeledDataset:
    """Parse a labeled dataset from `path`; errors name the offending line."""
    rows: list[list[float]] = []
    labels: list[float] = []
    width: int | None = None
    header_pending = has_header
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if header_pending:
                header_pending = False
                continue
            fields = [f.strip() for f in line.split(",")]
            label = _LABELS.get(fields[0])
            if label is None:
                raise ValueError(f"{path}: line {lineno}: label must be +1 or -1, got {fields[0]!r}")
            if width is None:
                width = len(fields)
                if width < 2:
                    raise ValueError(f"{path}: line {lineno}: expected at least one feature column")
            elif len(fields) != width:
                raise ValueError(
                    f"{path}: line {lineno}: expected {width} columns, got {len(fields)}")
            try:
                values = [float(f) for f in fields[1:]]
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: malformed feature value") from None
            if not all(math.isfinite(v) for v in values):
                raise ValueError(f"{path}: line {lineno}: non-finite feature value")
            labels.append(label)
            rows.append(values)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return LabeledDataset(np.array(rows), np.array(labels))


def save_csv(dataset: LabeledDataset, path, header: bool = False) -> None:
    """Write a dataset in the loader's format; floats use shortest round-trip repr."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if header:
            cols = ",".join(f"x{j}" for j in range(dataset.k))
            fh.write(f"label,{cols}\n")
        for label, row in zip(dataset.y, dataset.X):
            text = ",".join(repr(float(v)) for v in row)
            fh.write(f"{'+1' if label > 0 else '-1'},{text}\n")


@dataclass(frozen=True, eq=False)
class FoldSplit:
    """Stratified fold assignment: `assignments[i]` is sample i's fold index."""

    k: int
    assignments: np.ndarray
    seed: int

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments != fold)


def kfold(dataset: LabeledDataset, k: int, seed: int = 0) -> FoldSplit:
    """Stratified k-fold assignment, deterministic per seed.

    Within each class the samples are shuffled (PCG64) and dealt round-robin
    onto folds, so per-class fold sizes differ by at most one.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    rng = np.random.Generator(np.random.PCG64(seed))
    assignments = np.full(dataset.n, -1, dtype=np.intp)
    for label in (-1.0, 1.0):
        idx = np.flatnonzero(dataset.y == label)
        if idx.size < k:
            raise ValueError(
                f"class {int(label):+d} has {idx.size} samples, fewer than k={k} folds")
        shuffled = idx[rng.permutation(idx.size)]
        assignments[shuffled] = np.arange(shuffled.size) % k
    assignments.setflags(write=False)
    return FoldSplit(k=k, assignments=assignments, seed=seed)


def standardize(fit: LabeledDataset, *apply: LabeledDataset) -> tuple[LabeledDataset, ...]:
    """Zero-mean unit-variance transform fitted on `fit`, applied to all inputs.

    Constant features are left centered but unscaled.  Returns the transformed
    `fit` followed by the transformed `apply` datasets.
    """
    mean = fit.X.mean(axis=0)
    std = fit.X.std(axis=0)
    std = np.where(std == 0.0, 1.0, std)
    out = []
    for ds in (fit, *apply):
        if ds.k != fit.k:
            raise ValueError(f"dimension mismatch: expected k={fit.k}, got k={ds.k}")
        out.append(LabeledDataset((ds.X - mean) / std, ds.y))
    return tuple(out)
