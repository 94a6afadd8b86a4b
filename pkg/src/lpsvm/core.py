"""Domain types and model-level operations for linear two-class classifiers.

Everything here is a pure function over immutable inputs: datasets and models
freeze their arrays on construction, so they can be shared across threads and
reused between runs without defensive copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

if TYPE_CHECKING:
    from .solver import TrainConfig

__all__ = [
    "LabeledDataset",
    "AugmentedView",
    "SvmModel",
    "SlackReport",
    "augment",
    "decision_value",
    "decision_values",
    "predict",
    "slack",
    "margin_width",
    "DEFAULT_SV_THRESHOLD",
]

# Absolute slack threshold above which a sample counts as a support vector.
DEFAULT_SV_THRESHOLD = 1e-6


def _frozen_array(values, dtype=np.float64) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """n samples in R^k with labels in {-1, +1}.

    Arrays are validated and made read-only on construction; `X` has shape
    (n, k) and `y` has shape (n,) with entries exactly -1.0 or +1.0.
    """

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if X.ndim != 2:
            raise ValueError(f"samples must form a 2-d array, got shape {X.shape}")
        n, k = X.shape
        if n < 1 or k < 1:
            raise ValueError(f"need at least one sample and one feature, got shape {X.shape}")
        if y.shape != (n,):
            raise ValueError(f"labels have shape {y.shape}, expected ({n},)")
        if not np.all(np.isfinite(X)):
            raise ValueError("feature values must be finite (found NaN or Inf)")
        if not np.all((y == 1.0) | (y == -1.0)):
            bad = y[(y != 1.0) & (y != -1.0)][0]
            raise ValueError(f"labels must be -1 or +1, found {bad!r}")
        object.__setattr__(self, "X", _frozen_array(X))
        object.__setattr__(self, "y", _frozen_array(y))

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def k(self) -> int:
        return self.X.shape[1]

    @property
    def has_both_classes(self) -> bool:
        return bool(np.any(self.y == 1.0) and np.any(self.y == -1.0))

    def subset(self, indices) -> "LabeledDataset":
        """Dataset restricted to the given sample indices (in the given order)."""
        idx = np.asarray(indices)
        return LabeledDataset(self.X[idx], self.y[idx])


@dataclass(frozen=True, eq=False)
class AugmentedView:
    """Samples with a trailing constant-1 column, so the bias rides inside the weights."""

    matrix: np.ndarray  # (n, k+1); last column identically 1


def augment(dataset: LabeledDataset) -> AugmentedView:
    """Append the constant-1 coordinate to every sample: x -> [x, 1]."""
    n = dataset.n
    aug = np.hstack([dataset.X, np.ones((n, 1))])
    return AugmentedView(matrix=_frozen_array(aug))


@dataclass(frozen=True, eq=False)
class SvmModel:
    """A linear decision rule x -> sign(w.x + b)."""

    w: np.ndarray
    b: float
    meta: "TrainConfig | None" = None

    def __post_init__(self):
        w = np.asarray(self.w, dtype=np.float64)
        if w.ndim != 1 or w.size < 1:
            raise ValueError(f"weight vector must be 1-d and non-empty, got shape {w.shape}")
        if not (np.all(np.isfinite(w)) and np.isfinite(self.b)):
            raise ValueError("model parameters must be finite")
        object.__setattr__(self, "w", _frozen_array(w))
        object.__setattr__(self, "b", float(self.b))

    @property
    def k(self) -> int:
        return self.w.shape[0]

    @property
    def w_aug(self) -> np.ndarray:
        """The stacked [w, b] vector matching augmented samples."""
        return np.append(self.w, self.b)


@dataclass(frozen=True, eq=False)
class SlackReport:
    """Per-sample margin violations and the resulting support-vector set.

    `sv_indices` are exactly the indices with `xi > threshold`.
    """

    xi: np.ndarray
    sv_indices: np.ndarray
    n_sv: int
    threshold: float


def _check_dim(model: SvmModel, dim: int) -> None:
    if model.k != dim:
        raise ValueError(f"dimension mismatch: model has k={model.k}, input has k={dim}")


def decision_value(model: SvmModel, x: Sequence[float] | np.ndarray) -> float:
    """The raw score w.x + b for a single sample."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"expected a single 1-d sample, got shape {x.shape}")
    _check_dim(model, x.shape[0])
    return float(model.w @ x + model.b)


def decision_values(model: SvmModel, X: np.ndarray) -> np.ndarray:
    """Raw scores for a matrix of samples, one per row."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d sample matrix, got shape {X.shape}")
    _check_dim(model, X.shape[1])
    return X @ model.w + model.b


def predict(model: SvmModel, x) -> int:
    """Class label in {-1, +1}; a score of exactly 0 breaks ties to +1."""
    return 1 if decision_value(model, x) >= 0.0 else -1


def slack(model: SvmModel, dataset: LabeledDataset,
          threshold: float = DEFAULT_SV_THRESHOLD) -> SlackReport:
    """Hinge slacks xi_i = max(0, 1 - y_i (w.x_i + b)) and the support-vector set."""
    _check_dim(model, dataset.k)
    scores = decision_values(model, dataset.X)
    xi = np.maximum(0.0, 1.0 - dataset.y * scores)
    sv_indices = np.flatnonzero(xi > threshold)
    return SlackReport(
        xi=_frozen_array(xi),
        sv_indices=_frozen_array(sv_indices, dtype=np.intp),
        n_sv=int(sv_indices.size),
        threshold=float(threshold),
    )


def margin_width(model: SvmModel) -> float:
    """The gap 2/||w|| between the two unit-margin loci (bias excluded)."""
    norm = float(np.linalg.norm(model.w))
    if norm == 0.0:
        raise ValueError("margin width is undefined for a zero weight vector")
    return 2.0 / norm
