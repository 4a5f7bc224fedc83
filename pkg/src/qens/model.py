"""Binary classifier families on discretized parameter boxes.

Three families share one functional interface f(x; theta) -> {-1, +1}:

  threshold1d   f(x; o, w0) = sgn(o * (x - w0)), one input feature,
                orientation o and offset w0
  perceptron    f(x; w, w0) = sgn(w . x + w0)
  mlp2          f(x; W1, W2, w3) = sgn(w3 . tanh(W2 @ tanh(W1 @ x))),
                two hidden tanh layers, deliberately bias free so that
                negating every weight negates the output

sgn(0) is +1 throughout, so predictions are total and deterministic.
Parameter vectors are flat float64 arrays; mlp2 packs W1 row-major, then
W2 row-major, then the output weights.

A ParameterGrid discretizes each parameter interval into 2**bits evenly
spaced values (endpoints included) and identifies the grid with basis
indices 0 .. 2**(bits * P) - 1, most significant parameter first.  That
index space is what both the exhaustive committee vote and the simulated
register use, so decode_theta is the single source of truth for the
index -> parameter map.

Datasets are in-memory float64 matrices with labels in {-1, +1} and
round-trip through a strict CSV format (header x1,...,xN,y, label
literals -1 or 1, LF line endings).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

THRESHOLD1D = "threshold1d"
PERCEPTRON = "perceptron"
MLP_TWO_HIDDEN = "mlp2"

_KINDS = (THRESHOLD1D, PERCEPTRON, MLP_TWO_HIDDEN)


@dataclass(frozen=True)
class ModelFamily:
    """A classifier family plus the metadata fixing its parameter count."""

    kind: str
    input_dim: int
    hidden: tuple[int, int] = ()

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.input_dim < 1:
            raise ValueError("input_dim must be at least 1")
        if self.kind == THRESHOLD1D and self.input_dim != 1:
            raise ValueError("threshold1d takes exactly one input feature")
        if self.kind == MLP_TWO_HIDDEN:
            if len(self.hidden) != 2 or min(self.hidden) < 1:
                raise ValueError("mlp2 needs two positive hidden widths")
        elif self.hidden:
            raise ValueError(f"{self.kind} takes no hidden widths")

    @property
    def parameter_count(self) -> int:
        if self.kind == THRESHOLD1D:
            return 2
        if self.kind == PERCEPTRON:
            return self.input_dim + 1
        h1, h2 = self.hidden
        return h1 * self.input_dim + h2 * h1 + h2

    @property
    def is_point_symmetric(self) -> bool:
        """True when f(x; -theta) = -f(x; theta) for all x off the surface."""
        return self.kind in (PERCEPTRON, MLP_TWO_HIDDEN)


def threshold1d() -> ModelFamily:
    return ModelFamily(THRESHOLD1D, 1)


def perceptron(input_dim: int) -> ModelFamily:
    return ModelFamily(PERCEPTRON, input_dim)


def mlp_two_hidden(input_dim: int, h1: int = 2, h2: int = 2) -> ModelFamily:
    return ModelFamily(MLP_TWO_HIDDEN, input_dim, (h1, h2))


def _sign(margins: np.ndarray) -> np.ndarray:
    # sgn(0) = +1; the >= comparison also catches -0.0
    return np.where(margins >= 0.0, 1, -1).astype(np.int8)


def _as_theta_matrix(family: ModelFamily, thetas: np.ndarray) -> np.ndarray:
    thetas = np.atleast_2d(np.asarray(thetas, dtype=np.float64))
    if thetas.shape[1] != family.parameter_count:
        raise ValueError(
            f"expected {family.parameter_count} parameters per model, "
            f"got {thetas.shape[1]}"
        )
    return thetas


def _as_points(family: ModelFamily, xs: np.ndarray) -> np.ndarray:
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    if xs.shape[1] != family.input_dim:
        raise ValueError(f"expected {family.input_dim} features, got {xs.shape[1]}")
    return xs


def predict_many(family: ModelFamily, thetas: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Predictions for every (model, point) pair, shape (E, M), int8 in {-1, +1}."""
    thetas = _as_theta_matrix(family, thetas)
    xs = _as_points(family, xs)
    if family.kind == THRESHOLD1D:
        margins = thetas[:, 0:1] * (xs[:, 0][None, :] - thetas[:, 1:2])
    elif family.kind == PERCEPTRON:
        n = family.input_dim
        margins = thetas[:, :n] @ xs.T + thetas[:, n : n + 1]
    else:
        n = family.input_dim
        h1, h2 = family.hidden
        w1 = thetas[:, : h1 * n].reshape(-1, h1, n)
        w2 = thetas[:, h1 * n : h1 * n + h2 * h1].reshape(-1, h2, h1)
        w3 = thetas[:, h1 * n + h2 * h1 :]
        a1 = np.tanh(np.einsum("ehn,mn->ehm", w1, xs))
        a2 = np.tanh(np.einsum("ekh,ehm->ekm", w2, a1))
        margins = np.einsum("ek,ekm->em", w3, a2)
    return _sign(margins)


def predict(family: ModelFamily, theta: np.ndarray, x: np.ndarray) -> int:
    """Label of a single point under a single model."""
    return int(predict_many(family, theta, np.atleast_1d(x))[0, 0])


def negate_params(theta: np.ndarray) -> np.ndarray:
    """Componentwise negation; IEEE negation is exact, no rounding occurs."""
    return -np.asarray(theta, dtype=np.float64)


@dataclass(frozen=True)
class ParameterGrid:
    """Per-parameter intervals discretized into 2**bits inclusive endpoints."""

    intervals: tuple[tuple[float, float], ...]
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 1:
            raise ValueError("bits must be at least 1")
        if not self.intervals:
            raise ValueError("at least one parameter interval is required")
        normalized = []
        for lo, hi in self.intervals:
            lo, hi = float(lo), float(hi)
            if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
                raise ValueError(f"invalid interval [{lo}, {hi}]")
            normalized.append((lo, hi))
        object.__setattr__(self, "intervals", tuple(normalized))

    @property
    def parameter_count(self) -> int:
        return len(self.intervals)

    @property
    def total_bits(self) -> int:
        return self.bits * self.parameter_count

    @property
    def size(self) -> int:
        return 1 << self.total_bits

    @property
    def is_symmetric(self) -> bool:
        """True when every interval is [-c, c], so the grid contains -theta
        for every theta (bitwise complement of the index)."""
        return all(lo == -hi for lo, hi in self.intervals)


def _tick_values(lo: float, hi: float, bits: int, ticks: np.ndarray) -> np.ndarray:
    k = float((1 << bits) - 1)
    # algebraically lo + i*(hi-lo)/k; this form keeps endpoints exact and
    # negates exactly on symmetric intervals
    return (lo * (k - ticks) + hi * ticks) / k


def decode_theta(index: int, grid: ParameterGrid) -> np.ndarray:
    """Parameter vector of basis state `index`, most significant parameter first."""
    if not 0 <= index < grid.size:
        raise ValueError(f"index {index} outside 0..{grid.size - 1}")
    mask = (1 << grid.bits) - 1
    p = grid.parameter_count
    out = np.empty(p, dtype=np.float64)
    for j, (lo, hi) in enumerate(grid.intervals):
        slice_j = (index >> (grid.bits * (p - 1 - j))) & mask
        out[j] = _tick_values(lo, hi, grid.bits, np.float64(slice_j))
    return out


def decode_all(grid: ParameterGrid) -> np.ndarray:
    """All grid parameter vectors as an (E, P) matrix, row i = decode_theta(i)."""
    indices = np.arange(grid.size, dtype=np.int64)
    mask = (1 << grid.bits) - 1
    p = grid.parameter_count
    out = np.empty((grid.size, p), dtype=np.float64)
    for j, (lo, hi) in enumerate(grid.intervals):
        ticks = (indices >> (grid.bits * (p - 1 - j))) & mask
        out[:, j] = _tick_values(lo, hi, grid.bits, ticks.astype(np.float64))
    return out


def encode_theta(theta: np.ndarray, grid: ParameterGrid) -> int:
    """Inverse of decode_theta for lattice points (nearest tick per parameter)."""
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (grid.parameter_count,):
        raise ValueError("theta shape does not match the grid")
    k = (1 << grid.bits) - 1
    index = 0
    for j, (lo, hi) in enumerate(grid.intervals):
        tick = int(round((theta[j] - lo) / (hi - lo) * k))
        if not 0 <= tick <= k:
            raise ValueError(f"parameter {j} outside its interval")
        index = (index << grid.bits) | tick
    return index


@dataclass(frozen=True)
class LabeledPoint:
    x: np.ndarray
    y: int


class Dataset:
    """Immutable training set: float64 points and labels in {-1, +1}."""

    __slots__ = ("x", "y")

    def __init__(self, x: np.ndarray, y: np.ndarray) -> None:
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        y = np.asarray(y)
        if x.ndim != 2 or x.shape[0] < 1:
            raise ValueError("dataset needs at least one point")
        if not np.all(np.isfinite(x)):
            raise ValueError("dataset features must be finite")
        if y.shape != (x.shape[0],):
            raise ValueError("labels must be one per point")
        yi = y.astype(np.int64)
        if not np.array_equal(yi, y) or not np.all(np.isin(yi, (-1, 1))):
            raise ValueError("labels must be -1 or +1")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", yi)
        x.setflags(write=False)
        yi.setflags(write=False)

    def __setattr__(self, name: str, value) -> None:  # pragma: no cover
        raise AttributeError("Dataset is immutable")

    def __len__(self) -> int:
        return self.x.shape[0]

    @property
    def dimension(self) -> int:
        return self.x.shape[1]

    @property
    def points(self) -> list[LabeledPoint]:
        return [LabeledPoint(self.x[i].copy(), int(self.y[i])) for i in range(len(self))]

    @classmethod
    def from_points(cls, points) -> "Dataset":
        xs = [np.atleast_1d(np.asarray(p.x, dtype=np.float64)) for p in points]
        ys = [p.y for p in points]
        return cls(np.stack(xs), np.asarray(ys))

    def to_csv(self, path: str | Path) -> None:
        """Write header x1..xN,y then one row per point; floats use repr
        (shortest round-trip form) so output is byte stable."""
        lines = [",".join([f"x{j + 1}" for j in range(self.dimension)] + ["y"])]
        for i in range(len(self)):
            cells = [repr(float(v)) for v in self.x[i]]
            cells.append(str(int(self.y[i])))
            lines.append(",".join(cells))
        Path(path).write_text("\n".join(lines) + "\n", newline="\n")

    @classmethod
    def read_csv(cls, path: str | Path) -> "Dataset":
        text = Path(path).read_text()
        lines = [ln for ln in text.split("\n") if ln != ""]
        if not lines:
            raise ValueError("empty dataset file")
        header = lines[0].split(",")
        if header[-1] != "y" or any(
            h != f"x{j + 1}" for j, h in enumerate(header[:-1])
        ) or len(header) < 2:
            raise ValueError(f"bad header {lines[0]!r}")
        dim = len(header) - 1
        xs, ys = [], []
        for ln in lines[1:]:
            cells = ln.split(",")
            if len(cells) != dim + 1:
                raise ValueError(f"row has {len(cells)} cells, expected {dim + 1}")
            if cells[-1] not in ("-1", "1"):
                raise ValueError(f"label must be -1 or 1, got {cells[-1]!r}")
            xs.append([float(c) for c in cells[:-1]])
            ys.append(int(cells[-1]))
        return cls(np.asarray(xs), np.asarray(ys))


def correct_counts(family: ModelFamily, thetas: np.ndarray, dataset: Dataset) -> np.ndarray:
    """Number of training points each model classifies correctly, shape (E,)."""
    if len(dataset) < 1:
        raise ValueError("dataset is empty")
    preds = predict_many(family, thetas, dataset.x)
    return np.count_nonzero(preds == dataset.y[None, :].astype(np.int8), axis=1).astype(
        np.int64
    )


def accuracy(family: ModelFamily, theta: np.ndarray, dataset: Dataset) -> float:
    """Fraction of the dataset classified correctly, in [0, 1]."""
    return float(correct_counts(family, theta, dataset)[0]) / len(dataset)


def grid_accuracies(family: ModelFamily, grid: ParameterGrid, dataset: Dataset) -> np.ndarray:
    """Accuracy of every grid model, shape (E,)."""
    return grid_correct_counts(family, grid, dataset) / float(len(dataset))


def grid_correct_counts(family: ModelFamily, grid: ParameterGrid, dataset: Dataset) -> np.ndarray:
    if grid.parameter_count != family.parameter_count:
        raise ValueError("grid parameter count does not match the family")
    return correct_counts(family, decode_all(grid), dataset)
