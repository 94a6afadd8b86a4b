"""Independent verification machinery.

Three routes that never share code with the solver they check: central
finite differences for the analytic gradient, a dual coordinate-descent
reference solver for the p = 1 hinge objective, and a residual checker for
the optimality (KKT) conditions of that problem.

The dual solver works on augmented features with the bias *regularized*
(folded into the weight vector), because plain coordinate descent cannot
maintain the zero-sum constraint that an unregularized bias induces.  When
comparing against the momentum solver, run it with `regularize_bias=True`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import LabeledDataset, SvmModel, augment
from .solver import TrainConfig, objective

__all__ = [
    "DualSolution",
    "KktReport",
    "fd_gradient",
    "hinge_objective",
    "dual_cd_train",
    "kkt_check",
]


@dataclass(frozen=True, eq=False)
class DualSolution:
    """Box-constrained dual variables and the primal model they induce.

    The model is recovered as w' = sum_i alpha_i y_i x'_i over augmented
    features, recomputed from alpha after the final sweep (no accumulation
    drift).  `dual_objective_history` holds the dual objective after each
    sweep; it is nondecreasing.
    """

    alpha: np.ndarray
    model: SvmModel
    converged: bool
    n_sweeps: int
    dual_objective_history: np.ndarray


@dataclass(frozen=True)
class KktReport:
    """Residuals of the p = 1 optimality conditions; all are >= 0 and vanish
    at an exact optimum (dual_balance only when the bias is unregularized)."""

    stationarity_residual: float
    dual_balance_residual: float
    complementarity_residual: float
    feasibility_violation: float
    box_violation: float


def fd_gradient(w_aug: np.ndarray, data, y: np.ndarray, cfg: TrainConfig,
                step: float = 1e-6) -> np.ndarray:
    """Central-difference approximation of the smoothed objective's gradient."""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    w_aug = np.asarray(w_aug, dtype=np.float64)
    grad = np.empty_like(w_aug)
    for j in range(w_aug.shape[0]):
        shift = np.zeros_like(w_aug)
        shift[j] = step
        grad[j] = (objective(w_aug + shift, data, y, cfg)
                   - objective(w_aug - shift, data, y, cfg)) / (2.0 * step)
    return grad


def hinge_objective(w_aug: np.ndarray, data, y: np.ndarray, C: float,
                    regularize_bias: bool = True) -> float:
    """True (unsmoothed) hinge objective 1/2 w'^T D w' + C sum_i max(0, 1 - y_i w'.x'_i)."""
    X_aug = data.matrix if hasattr(data, "matrix") else np.asarray(data, dtype=np.float64)
    w_aug = np.asarray(w_aug, dtype=np.float64)
    d = np.ones(w_aug.shape[0])
    if not regularize_bias:
        d[-1] = 0.0
    z = 1.0 - y * (X_aug @ w_aug)
    return 0.5 * float(w_aug @ (d * w_aug)) + C * float(np.sum(np.maximum(z, 0.0)))


def dual_cd_train(dataset: LabeledDataset, C: float, *,
                  tol: float = 1e-15, max_sweeps: int = 50000,
                  seed: int = 0) -> DualSolution:
    """Reference solver for the p = 1 problem via exact coordinate minimization.

    Minimizes the dual 1/2 ||sum_i alpha_i y_i x'_i||^2 - sum_i alpha_i over
    the box [0, C]^n, visiting coordinates in a freshly seeded permutation per
    sweep, each update being the exact 1-d minimizer clipped to the box.
    Stops when the largest single-coordinate dual improvement within a sweep
    drops below `tol`; hitting `max_sweeps` first yields converged=False.
    """
    if C <= 0:
        raise ValueError(f"C must be positive, got {C}")
    if not dataset.has_both_classes:
        raise ValueError("training requires samples from both classes")
    X_aug = augment(dataset).matrix
    y = dataset.y
    n = dataset.n
    yx = np.ascontiguousarray(y[:, None] * X_aug)
    # Squared row norms; >= 1 because of the constant-1 coordinate.
    q = np.einsum("ij,ij->i", yx, yx)

    alpha = np.zeros(n)
    w = np.zeros(X_aug.shape[1])
    rng = np.random.Generator(np.random.PCG64(seed))
    history: list[float] = []
    converged = False
    sweeps = 0

    for sweeps in range(1, max_sweeps + 1):
        max_improve = 0.0
        for i in rng.permutation(n):
            g = float(yx[i] @ w) - 1.0
            a_old = alpha[i]
            a_new = min(max(a_old - g / q[i], 0.0), C)
            delta = a_new - a_old
            if delta != 0.0:
                improve = -(g * delta + 0.5 * q[i] * delta * delta)
                if improve > max_improve:
                    max_improve = improve
                w += delta * yx[i]
                alpha[i] = a_new
        history.append(float(np.sum(alpha)) - 0.5 * float(w @ w))
        if max_improve < tol:
            converged = True
            break

    w_exact = yx.T @ alpha
    model = SvmModel(w=w_exact[:-1].copy(), b=float(w_exact[-1]))
    alpha_out = alpha.copy()
    alpha_out.setflags(write=False)
    return DualSolution(
        alpha=alpha_out,
        model=model,
        converged=converged,
        n_sweeps=sweeps,
        dual_objective_history=np.array(history),
    )


def kkt_check(model: SvmModel, alpha: np.ndarray, dataset: LabeledDataset,
              C: float) -> KktReport:
    """Residuals of the stationarity, feasibility, complementarity and box
    conditions at (model, alpha).

    Slacks are reconstructed the way the optimality conditions dictate:
    xi_i = max(0, 1 - y_i(w.x_i + b)) where alpha_i > 0, and xi_i = 0 where
    alpha_i = 0 (a vanishing multiplier forces a vanishing slack).  The
    feasibility residual therefore flags points an alpha = 0 multiplier
    wrongly claims are satisfied.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    if alpha.shape != (dataset.n,):
        raise ValueError(f"alpha has shape {alpha.shape}, expected ({dataset.n},)")
    if model.k != dataset.k:
        raise ValueError(f"dimension mismatch: model k={model.k}, dataset k={dataset.k}")

    margins = dataset.y * (dataset.X @ model.w + model.b)
    xi = np.where(alpha > 0.0, np.maximum(1.0 - margins, 0.0), 0.0)

    stationarity = float(np.linalg.norm(model.w - dataset.X.T @ (alpha * dataset.y)))
    dual_balance = float(abs(np.sum(alpha * dataset.y)))
    complementarity = float(np.max(np.abs(alpha * (margins - 1.0 + xi))))
    feasibility = float(np.max(np.maximum(1.0 - xi - margins, 0.0)))
    box = float(max(np.max(-alpha), np.max(alpha - C), 0.0))
    return KktReport(
        stationarity_residual=stationarity,
        dual_balance_residual=dual_balance,
        complementarity_residual=complementarity,
        feasibility_violation=feasibility,
        box_violation=box,
    )
