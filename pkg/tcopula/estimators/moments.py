import math
from dataclasses import dataclass

import numpy as np

from tcopula.copulas.base import as_block


@dataclass
class MomentAccumulator:
    """Streaming first and second moments of (u, v) pairs.

    Batches are folded in with the pairwise-update formulas for centred sums,
    so accumulators built on disjoint partitions can be merged in any order.
    """

    count: int = 0
    mean_u: float = 0.0
    mean_v: float = 0.0
    m2_u: float = 0.0
    m2_v: float = 0.0
    co_m: float = 0.0

    @classmethod
    def from_arrays(cls, u, v):
        u = np.asarray(u, dtype=np.float64)
        v = np.asarray(v, dtype=np.float64)
        n = u.size
        if n == 0:
            return cls()
        mean_u = float(u.mean())
        mean_v = float(v.mean())
        du = u - mean_u
        dv = v - mean_v
        return cls(
            count=n,
            mean_u=mean_u,
            mean_v=mean_v,
            m2_u=float(np.dot(du, du)),
            m2_v=float(np.dot(dv, dv)),
            co_m=float(np.dot(du, dv)),
        )

    @classmethod
    def from_pairs(cls, pairs):
        block = as_block(pairs)
        return cls.from_arrays(block.u, block.v)

    def merge(self, other):
        """Return the accumulator of both partitions combined."""
        if other.count == 0:
            return MomentAccumulator(**vars(self))
        if self.count == 0:
            return MomentAccumulator(**vars(other))
        n = self.count + other.count
        du = other.mean_u - self.mean_u
        dv = other.mean_v - self.mean_v
        weight = self.count * other.count / n
        return MomentAccumulator(
            count=n,
            mean_u=self.mean_u + du * other.count / n,
            mean_v=self.mean_v + dv * other.count / n,
            m2_u=self.m2_u + other.m2_u + du * du * weight,
            m2_v=self.m2_v + other.m2_v + dv * dv * weight,
            co_m=self.co_m + other.co_m + du * dv * weight,
        )

    def update(self, u, v):
        """Fold a batch into this accumulator in place and return self."""
        merged = self.merge(MomentAccumulator.from_arrays(np.atleast_1d(u), np.atleast_1d(v)))
        self.__dict__.update(vars(merged))
        return self

    @property
    def variance_u(self):
        return self.m2_u / (self.count - 1) if self.count >= 2 else math.nan

    @property
    def variance_v(self):
        return self.m2_v / (self.count - 1) if self.count >= 2 else math.nan

    @property
    def covariance(self):
        return self.co_m / (self.count - 1) if self.count >= 2 else math.nan


def pearson_correlation(accumulator):
    """Sample correlation, or NaN when fewer than two points or a zero variance."""
    if accumulator.count < 2 or accumulator.m2_u <= 0 or accumulator.m2_v <= 0:
        return math.nan
    r = accumulator.co_m / math.sqrt(accumulator.m2_u * accumulator.m2_v)
    return min(1.0, max(-1.0, r))
