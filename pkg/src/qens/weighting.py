"""Committee decisions over exhaustively enumerated parameter grids.

Four weight schemes map a model's training accuracy a to a vote weight:

  uniform             1
  accuracy            a
  log_odds            log(a / (1 - a)), the optimal independent-expert
                      weight; unbounded at a in {0, 1}
  effective_centered  a - 1/2, the signed weight that survives when a
                      point-symmetric ensemble is folded onto its
                      better-than-chance half

The raw score is sum_theta w_theta * f(x; theta).  Per-label masses
p(+-1) = sum_{f = +-1} w_theta / sum_theta w_theta are probabilities for
the non-negative schemes; for signed schemes they are formal and become
NaN when the total weight vanishes (for example log_odds on a symmetric
grid, where the pair weights cancel exactly).

All reductions over the grid go through tree_sum, a fixed-shape pairwise
reduction.  Its result depends only on the operand array, never on chunk
or thread boundaries, which is what makes repeated runs byte identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import (
    Dataset,
    ModelFamily,
    ParameterGrid,
    decode_all,
    grid_correct_counts,
    predict_many,
)

DEFAULT_MODEL_CAP = 1 << 24
LOG_ODDS_CLAMP = 1e-6


class EnumerationCapError(RuntimeError):
    """Grid larger than the exhaustive enumeration cap."""


class DegenerateEnsembleError(ValueError):
    """Every model carries zero weight; no decision is defined."""


class UnboundedWeightError(ValueError):
    """log_odds requested at a in {0, 1} without opting into clamping."""


class WeightScheme(Enum):
    UNIFORM = "uniform"
    ACCURACY = "accuracy"
    LOG_ODDS = "log_odds"
    EFFECTIVE_CENTERED = "effective_centered"


def tree_sum(values: np.ndarray, axis: int = 0):
    """Pairwise (tree) sum with a shape that depends only on the length.

    Adjacent elements are paired level by level; an odd leftover is
    carried unchanged.  The same tree is used everywhere, so partial
    evaluation over the other axes (chunking, threads) cannot change
    a single bit of the result.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape[axis] == 0:
        return np.zeros(arr.shape[:axis] + arr.shape[axis + 1 :], dtype=np.float64)
    arr = np.moveaxis(arr, axis, 0)
    while arr.shape[0] > 1:
        m = arr.shape[0] - (arr.shape[0] % 2)
        head = arr[0:m:2] + arr[1:m:2]
        arr = head if m == arr.shape[0] else np.concatenate([head, arr[-1:]], axis=0)
    out = arr[0]
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class EnsembleDecision:
    """Outcome of one exhaustive vote at a single query point."""

    raw_score: float
    label: int
    p_plus: float
    p_minus: float


def weight(scheme: WeightScheme | str, a: float, clamp_log_odds: bool = False) -> float:
    """Vote weight of a single model with training accuracy `a`."""
    scheme = WeightScheme(scheme)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"accuracy {a} outside [0, 1]")
    if scheme is WeightScheme.UNIFORM:
        return 1.0
    if scheme is WeightScheme.ACCURACY:
        return float(a)
    if scheme is WeightScheme.EFFECTIVE_CENTERED:
        return float(a) - 0.5
    if a in (0.0, 1.0) and not clamp_log_odds:
        raise UnboundedWeightError(
            "log_odds diverges at accuracy 0 or 1; pass clamp_log_odds=True "
            "or exclude the model"
        )
    a = min(max(float(a), LOG_ODDS_CLAMP), 1.0 - LOG_ODDS_CLAMP)
    return math.log(a / (1.0 - a))


def weights_for(
    scheme: WeightScheme | str, accuracies: np.ndarray, clamp_log_odds: bool = False
) -> np.ndarray:
    """Vectorized `weight` over a full grid."""
    scheme = WeightScheme(scheme)
    a = np.asarray(accuracies, dtype=np.float64)
    if a.size and (a.min() < 0.0 or a.max() > 1.0):
        raise ValueError("accuracies outside [0, 1]")
    if scheme is WeightScheme.UNIFORM:
        return np.ones_like(a)
    if scheme is WeightScheme.ACCURACY:
        return a.copy()
    if scheme is WeightScheme.EFFECTIVE_CENTERED:
        return a - 0.5
    if not clamp_log_odds and np.any((a == 0.0) | (a == 1.0)):
        raise UnboundedWeightError(
            "log_odds diverges at accuracy 0 or 1; pass clamp_log_odds=True "
            "or exclude the model"
        )
    a = np.clip(a, LOG_ODDS_CLAMP, 1.0 - LOG_ODDS_CLAMP)
    return np.log(a / (1.0 - a))


def vote(
    family: ModelFamily, thetas: np.ndarray, model_weights: np.ndarray, x: np.ndarray
) -> EnsembleDecision:
    """Weighted vote of an explicit model list at query point x."""
    w = np.asarray(model_weights, dtype=np.float64)
    preds = predict_many(family, thetas, np.atleast_1d(x))[:, 0].astype(np.float64)
    if w.shape != preds.shape:
        raise ValueError("one weight per model is required")
    if not np.any(w != 0.0):
        raise DegenerateEnsembleError("all model weights are zero")
    raw = tree_sum(w * preds)
    total = tree_sum(w)
    if total != 0.0:
        p_plus = tree_sum(w * (preds > 0)) / total
        p_minus = tree_sum(w * (preds < 0)) / total
    else:
        p_plus = p_minus = math.nan
    return EnsembleDecision(raw, 1 if raw >= 0 else -1, p_plus, p_minus)


def ensemble_decide(
    family: ModelFamily,
    grid: ParameterGrid,
    dataset: Dataset,
    scheme: WeightScheme | str,
    x: np.ndarray,
    clamp_log_odds: bool = False,
    max_models: int = DEFAULT_MODEL_CAP,
) -> EnsembleDecision:
    """Exhaustive vote of every grid model, weighted by `scheme`."""
    if grid.size > max_models:
        raise EnumerationCapError(
            f"grid has {grid.size} models, cap is {max_models}"
        )
    acc = grid_correct_counts(family, grid, dataset) / float(len(dataset))
    w = weights_for(scheme, acc, clamp_log_odds)
    return vote(family, decode_all(grid), w, x)


def effective_expectation(
    family: ModelFamily, grid: ParameterGrid, dataset: Dataset, x: np.ndarray
) -> float:
    """Score of the better-than-chance half under centered weights, over E.

    For point-symmetric families on symmetric grids this equals half the
    full accuracy-weighted score divided by E: the chance-or-worse half
    is redundant because each model's negation inverts both its
    prediction and its accuracy.  Models at exactly chance carry zero
    weight and are excluded (their pair partner is excluded too).
    """
    if not family.is_point_symmetric:
        raise ValueError(f"{family.kind} is not point symmetric")
    if not grid.is_symmetric:
        raise ValueError("grid intervals must be symmetric around zero")
    m = len(dataset)
    counts = grid_correct_counts(family, grid, dataset)
    mask = 2 * counts > m
    if not np.any(mask):
        return 0.0
    acc = counts[mask] / float(m)
    preds = predict_many(family, decode_all(grid)[mask], np.atleast_1d(x))[:, 0]
    return tree_sum((acc - 0.5) * preds.astype(np.float64)) / float(grid.size)
