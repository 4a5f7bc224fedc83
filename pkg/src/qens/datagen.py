"""Deterministic synthetic datasets.

Every generator draws from the counter-based streams in qens.prng, one
pre-split stream per class (class -1 first, then class +1), so output is
a pure function of the requested parameters and the seed: regenerating a dataset
yields a byte-identical CSV on any platform or thread count.  Sample i,
feature d of a class consumes draw i * dim + d of that class's stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import prng
from .model import Dataset

_LANE_MINUS = 0
_LANE_PLUS = 1


@dataclass(frozen=True)
class BlobSpec:
    """Two isotropic Gaussian blobs with a shared standard deviation."""

    mean_minus: tuple[float, ...]
    mean_plus: tuple[float, ...]
    sigma: float
    per_class: int
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mean_minus", tuple(float(v) for v in self.mean_minus))
        object.__setattr__(self, "mean_plus", tuple(float(v) for v in self.mean_plus))
        if len(self.mean_minus) != len(self.mean_plus) or not self.mean_minus:
            raise ValueError("class means must share a positive dimension")
        if not self.sigma > 0.0:
            raise ValueError("sigma must be positive")
        if self.per_class < 1:
            raise ValueError("per_class must be at least 1")

    @property
    def dimension(self) -> int:
        return len(self.mean_minus)


def _class_samples(
    seed: int, lane: int, mean: tuple[float, ...], sigma: float, count: int
) -> np.ndarray:
    dim = len(mean)
    key = prng.derive_key(seed, lane)
    z = prng.normals(key, count * dim).reshape(count, dim)
    return np.asarray(mean, dtype=np.float64)[None, :] + sigma * z


def gaussian_blobs(spec: BlobSpec) -> Dataset:
    """Balanced two-class blob dataset; class -1 rows first."""
    x_minus = _class_samples(spec.seed, _LANE_MINUS, spec.mean_minus, spec.sigma, spec.per_class)
    x_plus = _class_samples(spec.seed, _LANE_PLUS, spec.mean_plus, spec.sigma, spec.per_class)
    x = np.concatenate([x_minus, x_plus], axis=0)
    y = np.concatenate(
        [np.full(spec.per_class, -1, dtype=np.int64), np.full(spec.per_class, 1, dtype=np.int64)]
    )
    return Dataset(x, y)


def gaussian_1d_pair(
    mu_minus: float,
    sigma_minus: float,
    mu_plus: float,
    sigma_plus: float,
    per_class: int,
    seed: int,
) -> Dataset:
    """One-dimensional two-class sample with per-class scale parameters."""
    if not (sigma_minus > 0.0 and sigma_plus > 0.0):
        raise ValueError("standard deviations must be positive")
    if per_class < 1:
        raise ValueError("per_class must be at least 1")
    x_minus = _class_samples(seed, _LANE_MINUS, (float(mu_minus),), sigma_minus, per_class)
    x_plus = _class_samples(seed, _LANE_PLUS, (float(mu_plus),), sigma_plus, per_class)
    x = np.concatenate([x_minus, x_plus], axis=0)
    y = np.concatenate(
        [np.full(per_class, -1, dtype=np.int64), np.full(per_class, 1, dtype=np.int64)]
    )
    return Dataset(x, y)
