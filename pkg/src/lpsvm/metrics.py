"""Evaluation metrics and the cross-validated two-solver comparison pipeline."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .core import DEFAULT_SV_THRESHOLD, LabeledDataset, SvmModel, decision_values, slack
from .data import kfold
from .data import standardize as standardize_features
from .solver import TrainConfig, train

__all__ = [
    "REPORT_FIELDS",
    "FoldComparison",
    "ComparisonReport",
    "accuracy",
    "angle_theta",
    "dist_d",
    "run_comparison",
    "comparison_to_dict",
]

# Column order of the comparison table: the standard (p = 1) solver first,
# then the sparse-slack solver, then the geometry between their weights.
REPORT_FIELDS = (
    "test_acc_std",
    "train_acc_std",
    "n_sv_std",
    "test_acc_min",
    "train_acc_min",
    "n_sv_min",
    "angle_theta_degrees",
    "dist_d",
)


@dataclass(frozen=True)
class FoldComparison:
    fold: int
    test_acc_std: float
    train_acc_std: float
    n_sv_std: int
    test_acc_min: float
    train_acc_min: float
    n_sv_min: int
    angle_theta_degrees: float
    dist_d: float


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    """Fold-level comparison records plus their arithmetic means."""

    folds: tuple[FoldComparison, ...]
    means: dict[str, float]
    k: int
    seed: int
    sv_threshold: float


def accuracy(model: SvmModel, dataset: LabeledDataset) -> float:
    """Fraction of samples whose predicted sign matches the label (ties to +1)."""
    scores = decision_values(model, dataset.X)
    predicted = np.where(scores >= 0.0, 1.0, -1.0)
    return float(np.mean(predicted == dataset.y))


def angle_theta(w1: np.ndarray, w2: np.ndarray) -> float:
    """Angle in degrees between two weight vectors (bias excluded by the caller).

    Mathematically arccos of the normalized dot product (cosine clamped to
    [-1, 1]), evaluated as 2*atan2(||u - v||, ||u + v||) on unit vectors: the
    two agree everywhere, but the atan2 form cannot produce NaN and returns
    exactly 0 for identical inputs and exactly 180 for exact negations.
    """
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    if w1.shape != w2.shape:
        raise ValueError(f"shape mismatch: {w1.shape} vs {w2.shape}")
    n1 = float(np.linalg.norm(w1))
    n2 = float(np.linalg.norm(w2))
    if n1 == 0.0 or n2 == 0.0:
        raise ValueError("angle is undefined for a zero weight vector")
    u = w1 / n1
    v = w2 / n2
    radians = 2.0 * math.atan2(float(np.linalg.norm(u - v)), float(np.linalg.norm(u + v)))
    return math.degrees(radians)


def dist_d(w1: np.ndarray, w2: np.ndarray) -> float:
    """Euclidean distance between weight vectors, normalized by ||w1||."""
    w1 = np.asarray(w1, dtype=np.float64)
    w2 = np.asarray(w2, dtype=np.float64)
    if w1.shape != w2.shape:
        raise ValueError(f"shape mismatch: {w1.shape} vs {w2.shape}")
    n1 = float(np.linalg.norm(w1))
    if n1 == 0.0:
        raise ValueError("distance is undefined for a zero reference vector")
    return float(np.linalg.norm(w1 - w2)) / n1


def run_comparison(dataset: LabeledDataset, cfg_std: TrainConfig, cfg_min: TrainConfig,
                   k: int, seed: int = 0,
                   sv_threshold: float = DEFAULT_SV_THRESHOLD,
                   standardize: bool = False) -> ComparisonReport:
    """Stratified k-fold comparison of the two solver configurations.

    Per fold, both solvers are trained on the training split; support vectors
    are counted on that split, and the angle/distance are computed between
    the two weight vectors (bias excluded).  With `standardize`, features are
    rescaled per fold using training-split statistics.  Deterministic given
    (dataset, configs, k, seed); folds are processed in index order.
    """
    split = kfold(dataset, k, seed)
    folds = []
    for fold in range(k):
        train_ds = dataset.subset(split.train_indices(fold))
        test_ds = dataset.subset(split.test_indices(fold))
        if standardize:
            train_ds, test_ds = standardize_features(train_ds, test_ds)
        model_std, _ = train(train_ds, cfg_std)
        model_min, _ = train(train_ds, cfg_min)
        folds.append(FoldComparison(
            fold=fold,
            test_acc_std=accuracy(model_std, test_ds),
            train_acc_std=accuracy(model_std, train_ds),
            n_sv_std=slack(model_std, train_ds, sv_threshold).n_sv,
            test_acc_min=accuracy(model_min, test_ds),
            train_acc_min=accuracy(model_min, train_ds),
            n_sv_min=slack(model_min, train_ds, sv_threshold).n_sv,
            angle_theta_degrees=angle_theta(model_std.w, model_min.w),
            dist_d=dist_d(model_std.w, model_min.w),
        ))
    means = {
        field: float(np.mean([getattr(f, field) for f in folds]))
        for field in REPORT_FIELDS
    }
    return ComparisonReport(
        folds=tuple(folds),
        means=means,
        k=k,
        seed=seed,
        sv_threshold=float(sv_threshold),
    )


def comparison_to_dict(report: ComparisonReport) -> dict:
    """JSON-ready view of a comparison report."""
    return {
        "k": report.k,
        "seed": report.seed,
        "sv_threshold": report.sv_threshold,
        "folds": [asdict(f) for f in report.folds],
        "means": dict(report.means),
    }
