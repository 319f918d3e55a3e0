"""Binned densities of (u, v) pairs, on the raw scale or the copula scale.

Bins follow numpy's histogram convention: half-open [lo, hi) except the last
bin of each axis, which also includes its upper edge.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
import pandas as pd
from scipy.stats import rankdata

from tcopula.config import COPULA_BINS, PDF_BINS
from tcopula.copulas.base import SampleBlock, as_block
from tcopula.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_RANGE = (-10.0, 10.0)


class GridScale(Enum):
    RAW = "raw"
    COPULA = "copula"


@dataclass
class DensityGrid:
    counts: np.ndarray
    x_edges: np.ndarray
    y_edges: np.ndarray
    scale: GridScale
    # Points that fell outside the grid
    out_of_range: int = 0

    @property
    def bins_x(self):
        return self.counts.shape[0]

    @property
    def bins_y(self):
        return self.counts.shape[1]

    @property
    def range_x(self):
        return float(self.x_edges[0]), float(self.x_edges[-1])

    @property
    def range_y(self):
        return float(self.y_edges[0]), float(self.y_edges[-1])

    @property
    def total(self):
        return int(self.counts.sum())

    def centers(self):
        x = 0.5 * (self.x_edges[:-1] + self.x_edges[1:])
        y = 0.5 * (self.y_edges[:-1] + self.y_edges[1:])
        return x, y

    def density(self):
        """Counts normalised to integrate to 1 over the grid."""
        area = np.outer(np.diff(self.x_edges), np.diff(self.y_edges))
        total = self.total
        if total == 0:
            return np.zeros_like(area)
        return self.counts / (total * area)

    def correlation(self):
        """Correlation of bin-centre coordinates weighted by counts."""
        x, y = self.centers()
        w = self.counts.astype(np.float64)
        total = w.sum()
        if total == 0:
            return float("nan")
        mx = (w.sum(axis=1) @ x) / total
        my = (w.sum(axis=0) @ y) / total
        dx = x - mx
        dy = y - my
        cov = dx @ w @ dy / total
        vx = (w.sum(axis=1) @ (dx * dx)) / total
        vy = (w.sum(axis=0) @ (dy * dy)) / total
        return float(cov / np.sqrt(vx * vy))

    def merge(self, other):
        if (self.scale != other.scale
                or not np.array_equal(self.x_edges, other.x_edges)
                or not np.array_equal(self.y_edges, other.y_edges)):
            raise ValueError("Cannot merge density grids with different layouts")
        return DensityGrid(
            counts=self.counts + other.counts,
            x_edges=self.x_edges,
            y_edges=self.y_edges,
            scale=self.scale,
            out_of_range=self.out_of_range + other.out_of_range,
        )

    def to_frame(self):
        """Counts as a DataFrame: rows are u-bin centres, columns v-bin centres."""
        x, y = self.centers()
        frame = pd.DataFrame(self.counts, index=pd.Index(x, name="u_center"), columns=[repr(float(c)) for c in y])
        return frame


def _check_bins(bins):
    if isinstance(bins, bool) or int(bins) != bins or bins < 1:
        raise DomainError(f"bins must be a positive integer, got {bins!r}")
    return int(bins)


def _check_range(rng):
    lo, hi = float(rng[0]), float(rng[1])
    if not lo < hi:
        raise DomainError(f"Grid range must be nonempty, got [{lo}, {hi}]")
    return lo, hi


def _bin(u, v, bins_x, bins_y, range_x, range_y, scale):
    counts, x_edges, y_edges = np.histogram2d(u, v, bins=[bins_x, bins_y], range=[range_x, range_y])
    counts = counts.astype(np.int64)
    return DensityGrid(
        counts=counts,
        x_edges=x_edges,
        y_edges=y_edges,
        scale=scale,
        out_of_range=int(u.size - counts.sum()),
    )


def histogram2d(pairs, bins=PDF_BINS, range_x=DEFAULT_RANGE, range_y=None, bins_y=None):
    """Raw-scale 2-D histogram; points outside the grid are tallied, not binned."""
    block = as_block(pairs)
    bins_x = _check_bins(bins)
    bins_y = _check_bins(bins_y if bins_y is not None else bins)
    range_x = _check_range(range_x)
    range_y = _check_range(range_y if range_y is not None else range_x)
    grid = _bin(block.u, block.v, bins_x, bins_y, range_x, range_y, GridScale.RAW)
    if grid.out_of_range:
        logger.info("%d of %d points outside the density grid", grid.out_of_range, len(block))
    return grid


def pseudo_observations(x):
    """rank/(N+1) for each value; ties keep their original order."""
    x = np.asarray(x, dtype=np.float64)
    return rankdata(x, method="ordinal") / (x.size + 1.0)


def copula_transform(pairs):
    """Map both margins to (0, 1) by their ranks."""
    block = as_block(pairs)
    return SampleBlock(pseudo_observations(block.u), pseudo_observations(block.v))


def empirical_copula_density(pairs, bins=COPULA_BINS):
    """Rank-transform both margins and bin them on [0, 1]^2."""
    block = as_block(pairs)
    if len(block) < 2:
        raise DomainError(f"Copula density needs at least 2 pairs, got {len(block)}")
    bins = _check_bins(bins)
    ranked = copula_transform(block)
    return _bin(ranked.u, ranked.v, bins, bins, (0.0, 1.0), (0.0, 1.0), GridScale.COPULA)
