"""Majority-vote asymptotics for committees of independent members.

condorcet_error gives the probability that a majority of `size`
independent members, each correct with probability p, votes wrongly:

    sum_{k > size/2} C(size, k) * (1-p)**k * p**(size-k)

Terms are evaluated in log space with log-gamma so sizes in the
thousands neither overflow nor underflow.  Committee sizes must be odd;
ties are undefined and deliberately rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp


@dataclass(frozen=True)
class CommitteeSpec:
    """Committee size plus one accuracy per member."""

    size: int
    accuracies: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.size < 1 or self.size % 2 == 0:
            raise ValueError("size must be odd and positive")
        if len(self.accuracies) != self.size:
            raise ValueError("one accuracy per member is required")
        if any(not 0.0 <= a <= 1.0 for a in self.accuracies):
            raise ValueError("accuracies must lie in [0, 1]")

    @classmethod
    def homogeneous(cls, size: int, p: float) -> "CommitteeSpec":
        return cls(size, (float(p),) * size)


def condorcet_error(size: int, p: float) -> float:
    """Probability that the majority of `size` members errs, members iid
    correct with probability p."""
    if size < 1 or size % 2 == 0:
        raise ValueError("size must be odd and positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"accuracy {p} outside [0, 1]")
    if p == 0.0:
        return 1.0
    if p == 1.0:
        return 0.0
    k = np.arange(size // 2 + 1, size + 1, dtype=np.float64)
    log_terms = (
        gammaln(size + 1.0)
        - gammaln(k + 1.0)
        - gammaln(size - k + 1.0)
        + k * np.log1p(-p)
        + (size - k) * np.log(p)
    )
    return float(min(1.0, np.exp(logsumexp(log_terms))))


def condorcet_curve(p: float, max_size: int) -> list[tuple[int, float]]:
    """(size, majority error) for every odd size up to max_size."""
    if max_size < 1:
        raise ValueError("max_size must be positive")
    return [(e, condorcet_error(e, p)) for e in range(1, max_size + 1, 2)]


def odds_ratio(a: float) -> float:
    """a / (1 - a); the signal carried by a member of accuracy a."""
    if not 0.0 <= a < 1.0:
        raise ValueError("odds ratio needs accuracy in [0, 1)")
    return a / (1.0 - a)


def lam_suen_improves(a1: float, a2: float, ensemble_accuracies) -> bool:
    """Whether adding two members of accuracies a1, a2 cannot hurt a
    majority committee: their joint odds must reach the best member's odds."""
    members = tuple(float(a) for a in ensemble_accuracies)
    if not members:
        raise ValueError("the committee must have at least one member")
    for a in (a1, a2, *members):
        if not 0.0 < a < 1.0:
            raise ValueError("accuracies must lie strictly between 0 and 1")
    joint = odds_ratio(a1) * odds_ratio(a2)
    return joint >= max(odds_ratio(a) for a in members)
