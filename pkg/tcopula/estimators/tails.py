"""Empirical tail statistics.

The tail correlation conditions on the first variable only,
correl(U, V | U > gamma*std), while the tail count needs both variables
past the threshold, #(U > gamma*std, V > gamma*std).
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from tcopula.analytics.moments import t_variance
from tcopula.config import MIN_TAIL_COUNT
from tcopula.copulas.base import as_block
from tcopula.errors import DomainError
from tcopula.estimators.moments import MomentAccumulator, pearson_correlation

logger = logging.getLogger(__name__)

STD_MODES = ("t", "unit")


@dataclass(frozen=True)
class TailStatistic:
    gamma: float
    threshold_raw: float
    subsample_count: int
    # None when the subsample is too small for a meaningful value
    value: float | None

    @property
    def defined(self):
        return self.value is not None


def threshold_scale(nu, std_mode="t"):
    """Raw units per tail standard deviation.

    "t" uses the t(nu) standard deviation sqrt(nu/(nu-2)); "unit" uses 1.
    """
    if std_mode == "t":
        return math.sqrt(t_variance(nu))
    if std_mode == "unit":
        return 1.0
    raise DomainError(f"Unknown threshold convention {std_mode!r} (expected one of {STD_MODES})")


def _threshold(gamma, std):
    if not gamma >= 0:
        raise DomainError(f"gamma must be nonnegative, got {gamma}")
    if not std > 0:
        raise DomainError(f"std must be positive, got {std}")
    return gamma * std


def _statistic(gamma, threshold, acc, min_count):
    value = pearson_correlation(acc) if acc.count >= min_count else math.nan
    if math.isnan(value):
        logger.debug("Tail correlation undefined at gamma=%s (%d points)", gamma, acc.count)
        value = None
    return TailStatistic(float(gamma), threshold, acc.count, value)


def tail_correlation(pairs, gamma, std, min_count=MIN_TAIL_COUNT):
    """Pearson correlation over the pairs with u > gamma*std."""
    threshold = _threshold(gamma, std)
    block = as_block(pairs)
    mask = block.u > threshold
    acc = MomentAccumulator.from_arrays(block.u[mask], block.v[mask])
    return _statistic(gamma, threshold, acc, min_count)


def tail_count(pairs, gamma, std):
    """Number of pairs with both u and v above gamma*std."""
    threshold = _threshold(gamma, std)
    block = as_block(pairs)
    return int(np.count_nonzero((block.u > threshold) & (block.v > threshold)))


def tail_scatter(pairs, gamma, std):
    """The pairs with u > gamma*std, in their original order."""
    threshold = _threshold(gamma, std)
    block = as_block(pairs)
    return block.select(block.u > threshold)


def conditional_variance(pairs, mu):
    """Sample Var[U | U > mu]; NaN with fewer than two exceedances."""
    block = as_block(pairs)
    above = block.u > mu
    return MomentAccumulator.from_arrays(block.u[above], block.v[above]).variance_u


class TailAccumulator:
    """Tail correlations and joint counts for several gammas, fed block by block.

    Partial accumulators over disjoint blocks combine with ``merge``.
    """

    def __init__(self, gammas, std, min_count=MIN_TAIL_COUNT):
        self.gammas = [float(g) for g in gammas]
        self.std = float(std)
        self.min_count = min_count
        self.thresholds = {g: _threshold(g, self.std) for g in self.gammas}
        self.moments = {g: MomentAccumulator() for g in self.gammas}
        self.joint_counts = {g: 0 for g in self.gammas}
        self.total = 0

    def update(self, pairs):
        block = as_block(pairs)
        self.total += len(block)
        for g in self.gammas:
            t = self.thresholds[g]
            above_u = block.u > t
            self.moments[g].update(block.u[above_u], block.v[above_u])
            self.joint_counts[g] += int(np.count_nonzero(above_u & (block.v > t)))
        return self

    def merge(self, other):
        if self.gammas != other.gammas or self.std != other.std:
            raise ValueError("Cannot merge tail accumulators with different thresholds")
        merged = TailAccumulator(self.gammas, self.std, self.min_count)
        merged.total = self.total + other.total
        for g in self.gammas:
            merged.moments[g] = self.moments[g].merge(other.moments[g])
            merged.joint_counts[g] = self.joint_counts[g] + other.joint_counts[g]
        return merged

    def statistics(self):
        return [_statistic(g, self.thresholds[g], self.moments[g], self.min_count) for g in self.gammas]

    def counts(self):
        return dict(self.joint_counts)
