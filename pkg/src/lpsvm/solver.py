"""Smoothed hinge objective with an Lp slack penalty and its momentum descent solver.

The trained objective, over the augmented weight vector w' = [w, b], is

    J(w') = 1/2 w'^T D w' + C * sum_i softplus_s(1 - y_i w'.x'_i)^p

where softplus_s(x) = (1/s) log(1 + exp(s x)) is a sharp differentiable upper
bound on max(0, x), p in (0, 1] is the slack exponent (p = 1 recovers the
standard hinge penalty), and D is the identity with the bias entry zeroed
unless `regularize_bias` is set.

All floating-point paths are overflow-free: the per-sample gradient
coefficient sigma(s z) * softplus_s(z)^(p-1) is assembled in the log domain,
so margins anywhere in double range produce finite objective and gradient
values, with exact zeros where the true coefficient underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import AugmentedView, LabeledDataset, SvmModel, augment

__all__ = [
    "TrainConfig",
    "TrainTrace",
    "DivergenceError",
    "smoothed_plus",
    "objective",
    "gradient",
    "train",
    "STOP_OBJECTIVE",
    "STOP_GRADIENT",
    "STOP_ITERATION_CAP",
]

STOP_OBJECTIVE = "objective-tolerance"
STOP_GRADIENT = "gradient-tolerance"
STOP_ITERATION_CAP = "iteration-cap"

# Below this, log(softplus(t)) equals t to double precision.
_LOG_SOFTPLUS_CUT = -33.0


class DivergenceError(RuntimeError):
    """An iterate produced a non-finite objective or gradient."""


@dataclass(frozen=True)
class TrainConfig:
    """All solver knobs.

    C         : weight of the slack penalty (> 0)
    p         : slack exponent in (0, 1]; p < 1 shrinks the support-vector set
    s         : softplus sharpness (> 0); the smoothing gap is log(2)/s
    eta       : learning rate (> 0)
    eps       : momentum coefficient in [0, 1)
    tol_obj   : stop when |J_t - J_{t-1}| / max(1, |J_{t-1}|) < tol_obj
    tol_grad  : stop when the gradient norm drops below tol_grad
    max_iter  : iteration cap
    regularize_bias : include the bias in the quadratic term (needed when
        comparing against the dual reference solver, which folds the bias
        into the weights); off by default
    """

    C: float = 1.0
    p: float = 0.5
    s: float = 100.0
    eta: float = 1e-2
    eps: float = 0.9
    tol_obj: float = 1e-8
    tol_grad: float = 1e-5
    max_iter: int = 5000
    regularize_bias: bool = False

    def __post_init__(self):
        if not (np.isfinite(self.C) and self.C > 0):
            raise ValueError(f"C must be positive, got {self.C}")
        if not (0.0 < self.p <= 1.0):
            raise ValueError(f"p must lie in (0, 1], got {self.p}")
        if not (np.isfinite(self.s) and self.s > 0):
            raise ValueError(f"s must be positive, got {self.s}")
        if not (np.isfinite(self.eta) and self.eta > 0):
            raise ValueError(f"eta must be positive, got {self.eta}")
        if not (0.0 <= self.eps < 1.0):
            raise ValueError(f"eps must lie in [0, 1), got {self.eps}")
        if not (self.tol_obj > 0 and self.tol_grad > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass(frozen=True, eq=False)
class TrainTrace:
    """Per-iteration history of a training run.

    `objective_history` has iterations + 1 entries (the initial point is
    included); `grad_norm_history` has one entry per performed update, the
    gradient norm at the point the update stepped from.
    """

    objective_history: np.ndarray
    grad_norm_history: np.ndarray
    iterations: int
    converged: bool
    stop_reason: str


def _softplus(t: np.ndarray) -> np.ndarray:
    # log(1 + e^t), stable in both directions
    return np.logaddexp(0.0, t)


def _log_softplus(t: np.ndarray) -> np.ndarray:
    # log(log(1 + e^t)), finite for every finite t: for very negative t the
    # inner softplus underflows but equals e^t to double precision, so the
    # log is just t.
    t = np.asarray(t, dtype=np.float64)
    out = t.copy()
    head = t >= _LOG_SOFTPLUS_CUT
    if np.any(head):
        out[head] = np.log(np.logaddexp(0.0, t[head]))
    return out


def _log_sigmoid(t: np.ndarray) -> np.ndarray:
    return -np.logaddexp(0.0, -t)


def smoothed_plus(x, s: float):
    """Sharp softplus (1/s) log(1 + exp(s x)), elementwise.

    Upper-bounds max(0, x) within log(2)/s and is computed overflow-free for
    any double-range input (large positive s*x evaluates as
    x + (1/s) log(1 + exp(-s x)) inside logaddexp).
    """
    if s <= 0:
        raise ValueError(f"s must be positive, got {s}")
    arr = np.asarray(x, dtype=np.float64)
    # s*x may overflow for x near the top of double range; there the result
    # is x itself to double precision.
    with np.errstate(over="ignore"):
        t = s * arr
        result = np.where(np.isposinf(t), arr, _softplus(t) / s)
    if arr.ndim == 0:
        return float(result)
    return result


def _reg_diag(dim: int, regularize_bias: bool) -> np.ndarray:
    d = np.ones(dim)
    if not regularize_bias:
        d[-1] = 0.0
    return d


def _aug_matrix(data) -> np.ndarray:
    return data.matrix if isinstance(data, AugmentedView) else np.asarray(data, dtype=np.float64)


def objective(w_aug: np.ndarray, data, y: np.ndarray, cfg: TrainConfig) -> float:
    """Smoothed penalized objective at the augmented weight vector.

    `data` is an AugmentedView or the (n, k+1) augmented sample matrix.
    Raises DivergenceError if the value is not finite.
    """
    X_aug = _aug_matrix(data)
    w_aug = np.asarray(w_aug, dtype=np.float64)
    d = _reg_diag(w_aug.shape[0], cfg.regularize_bias)
    # Overflow/NaN here is the divergence signal; report it, don't warn.
    with np.errstate(over="ignore", invalid="ignore"):
        z = 1.0 - y * (X_aug @ w_aug)
        hinge = _softplus(cfg.s * z) / cfg.s
        value = 0.5 * float(w_aug @ (d * w_aug)) + cfg.C * float(np.sum(hinge ** cfg.p))
    if not np.isfinite(value):
        raise DivergenceError("objective is not finite")
    return value


def gradient(w_aug: np.ndarray, data, y: np.ndarray, cfg: TrainConfig) -> np.ndarray:
    """Analytic gradient of `objective` with respect to w_aug.

    The per-sample coefficient sigma(s z_i) * n_i^(p-1), with
    n_i = softplus_s(z_i), is evaluated as exp(log sigma + (p-1) log n): both
    logs come from stable softplus forms, so the coefficient is exact where
    representable and exactly 0 where it underflows (never 0 * inf).
    """
    X_aug = _aug_matrix(data)
    w_aug = np.asarray(w_aug, dtype=np.float64)
    d = _reg_diag(w_aug.shape[0], cfg.regularize_bias)
    with np.errstate(over="ignore", invalid="ignore"):
        t = cfg.s * (1.0 - y * (X_aug @ w_aug))
        log_n = _log_softplus(t) - math.log(cfg.s)
        coeff = np.exp(_log_sigmoid(t) + (cfg.p - 1.0) * log_n)
        grad = d * w_aug - cfg.p * cfg.C * (X_aug.T @ (coeff * y))
    if not np.all(np.isfinite(grad)):
        raise DivergenceError("gradient is not finite")
    return grad


def train(dataset: LabeledDataset, cfg: TrainConfig) -> tuple[SvmModel, TrainTrace]:
    """Minimize the smoothed objective by gradient descent with momentum.

    Starts from w' = 0, v = 0 and iterates

        v <- eps * v - eta * grad J(w'),    w' <- w' + v

    until the relative objective change or the gradient norm drops below its
    tolerance, or the iteration cap is reached.  Deterministic: identical
    inputs give bit-identical results.

    Raises DivergenceError (naming the iteration) if an iterate goes
    non-finite, and ValueError if the dataset has only one class.
    """
    if not dataset.has_both_classes:
        raise ValueError("training requires samples from both classes")
    X_aug = augment(dataset).matrix
    y = dataset.y
    dim = dataset.k + 1

    w = np.zeros(dim)
    v = np.zeros(dim)
    obj_hist = [objective(w, X_aug, y, cfg)]
    grad_hist: list[float] = []
    converged = False
    stop_reason = STOP_ITERATION_CAP

    for it in range(1, cfg.max_iter + 1):
        try:
            g = gradient(w, X_aug, y, cfg)
        except DivergenceError as exc:
            raise DivergenceError(f"gradient diverged at iteration {it}") from exc
        grad_norm = float(np.linalg.norm(g))
        v = cfg.eps * v - cfg.eta * g
        w = w + v
        try:
            value = objective(w, X_aug, y, cfg)
        except DivergenceError as exc:
            raise DivergenceError(f"objective diverged at iteration {it}") from exc
        prev = obj_hist[-1]
        obj_hist.append(value)
        grad_hist.append(grad_norm)
        if abs(value - prev) / max(1.0, abs(prev)) < cfg.tol_obj:
            converged = True
            stop_reason = STOP_OBJECTIVE
            break
        if grad_norm < cfg.tol_grad:
            converged = True
            stop_reason = STOP_GRADIENT
            break

    model = SvmModel(w=w[:-1].copy(), b=float(w[-1]), meta=cfg)
    trace = TrainTrace(
        objective_history=np.array(obj_hist),
        grad_norm_history=np.array(grad_hist),
        iterations=len(grad_hist),
        converged=converged,
        stop_reason=stop_reason,
    )
    return model, trace
