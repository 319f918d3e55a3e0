"""Table builders behind the CLI commands.

Each builder returns a pandas DataFrame (plus whatever the manifest needs);
writing files is left to the CLI.
"""

import logging
import math
from dataclasses import replace

import numpy as np
import pandas as pd
from scipy import stats

from tcopula.analytics.moments import (
    correlation_reduction_asymptotic,
    correlation_reduction_factor,
    effective_correlation,
)
from tcopula.analytics.tails import (
    correlated_t_tail_correlation,
    normal_tail_correlation,
    normal_tail_variance,
    t_tail_variance,
)
from tcopula.config import BLOCK_SIZE, GAMMA_MIN, WORKERS
from tcopula.copulas.base import CopulaMethod
from tcopula.copulas.generator import generate_arrays, generate_blocks
from tcopula.errors import DomainError
from tcopula.estimators.density import histogram2d, empirical_copula_density
from tcopula.estimators.moments import MomentAccumulator, pearson_correlation
from tcopula.estimators.tails import TailAccumulator, tail_scatter, threshold_scale

logger = logging.getLogger(__name__)

METHODS = tuple(CopulaMethod)
KS_SAMPLES = 100_000


# ---------------------------------------------------------------------------
# Analytic tables
# ---------------------------------------------------------------------------

def reduction_table(nu_list):
    """Rows (nu, exact_factor, exact_factor_4dp, asymptotic_factor).

    A nu outside the domain yields a row of empty cells and a warning.
    """
    rows = []
    for nu in nu_list:
        try:
            exact = correlation_reduction_factor(nu)
            asymptotic = correlation_reduction_asymptotic(nu)
        except DomainError as e:
            logger.warning("Skipping nu=%s: %s", nu, e)
            exact = asymptotic = math.nan
        rows.append({
            "nu": float(nu),
            "exact_factor": exact,
            "exact_factor_4dp": round(exact, 4),
            "asymptotic_factor": asymptotic,
        })
    return pd.DataFrame(rows, columns=["nu", "exact_factor", "exact_factor_4dp", "asymptotic_factor"])


def analytic_tail_curve(rho, nu, mu_list, law="t"):
    """Model tail correlation at each threshold mu, for t or Normal tails."""
    rows = []
    for mu in mu_list:
        if law == "t":
            variance = t_tail_variance(nu, mu)
            value = correlated_t_tail_correlation(rho, nu, mu)
        elif law == "normal":
            variance = normal_tail_variance(mu)
            value = normal_tail_correlation(rho, mu)
        else:
            raise DomainError(f"Unknown tail law {law!r} (expected 't' or 'normal')")
        rows.append({"mu": float(mu), "tail_variance": variance, "tail_correlation": value})
    return pd.DataFrame(rows, columns=["mu", "tail_variance", "tail_correlation"])


# ---------------------------------------------------------------------------
# Monte-Carlo tables
# ---------------------------------------------------------------------------

def gamma_range(gamma_max):
    if gamma_max < 1:
        raise DomainError(f"gamma_max must be at least 1, got {gamma_max}")
    return list(range(min(GAMMA_MIN, gamma_max), gamma_max + 1))


def tail_accumulators(template, gammas, std_mode="t", workers=WORKERS, block_size=BLOCK_SIZE):
    """One independent run per method, streamed through a TailAccumulator."""
    std = threshold_scale(template.nu, std_mode)
    results = {}
    for method in METHODS:
        config = replace(template, method=method)
        acc = TailAccumulator(gammas, std)
        for block in generate_blocks(config, workers=workers, block_size=block_size):
            acc.update(block)
        results[method] = acc
    return results


def tail_table(accumulators):
    """Tail correlation per gamma (rows) and method (columns); undefined -> NaN."""
    frame = None
    for method, acc in accumulators.items():
        column = {}
        for stat in acc.statistics():
            if not stat.defined:
                logger.warning(
                    "Tail correlation for %s at gamma=%s rests on %d points; left empty",
                    method, stat.gamma, stat.subsample_count,
                )
            column[stat.gamma] = stat.value if stat.defined else math.nan
        series = pd.Series(column, name=method.value, dtype=np.float64)
        frame = series.to_frame() if frame is None else frame.join(series)
    frame.index.name = "gamma"
    return frame.reset_index()


def tail_counts(accumulators):
    """Joint exceedance counts per gamma (rows) and method (columns)."""
    frame = pd.DataFrame({method.value: pd.Series(acc.counts(), dtype=np.int64) for method, acc in accumulators.items()})
    frame.index.name = "gamma"
    return frame.reset_index()


def correlation_summary(template, ks_samples=KS_SAMPLES, workers=WORKERS, block_size=BLOCK_SIZE):
    """Empirical vs population correlation and margin KS tests, per method."""
    rows = []
    for method in METHODS:
        config = replace(template, method=method)
        row = {"method": method.value}
        try:
            block = generate_arrays(config, workers=workers, block_size=block_size)
        except DomainError as e:
            logger.warning("Skipping %s: %s", method, e)
            rows.append(row)
            continue
        row["empirical_correlation"] = pearson_correlation(MomentAccumulator.from_pairs(block))
        row["population_correlation"] = population_correlation(method, config.rho, config.nu)
        head = block.head(ks_samples)
        for name, values in (("u", head.u), ("v", head.v)):
            result = stats.kstest(values, "t", args=(config.nu,))
            row[f"ks_statistic_{name}"] = float(result.statistic)
            row[f"ks_pvalue_{name}"] = float(result.pvalue)
        rows.append(row)
    columns = [
        "method", "empirical_correlation", "population_correlation",
        "ks_statistic_u", "ks_pvalue_u", "ks_statistic_v", "ks_pvalue_v",
    ]
    return pd.DataFrame(rows, columns=columns)


def population_correlation(method, rho, nu):
    """Correlation each construction has in population; NaN if undefined."""
    if method is CopulaMethod.INDEP_CHI2:
        return effective_correlation(rho, nu) if nu > 2 else math.nan
    return rho if nu > 2 else math.nan


# ---------------------------------------------------------------------------
# Raw data and figure exports
# ---------------------------------------------------------------------------

def summary_statistics(block):
    """Statistics recorded in a sample file's manifest."""
    acc = MomentAccumulator.from_pairs(block)
    return {
        "count": acc.count,
        "mean_u": acc.mean_u,
        "mean_v": acc.mean_v,
        "variance_u": acc.variance_u,
        "variance_v": acc.variance_v,
        "pearson": pearson_correlation(acc),
    }


def sample_frame(config, workers=WORKERS, block_size=BLOCK_SIZE):
    block = generate_arrays(config, workers=workers, block_size=block_size)
    return pd.DataFrame({"u": block.u, "v": block.v}), summary_statistics(block)


def density_grid(config, scale="raw", bins=None, range_x=None, workers=WORKERS, block_size=BLOCK_SIZE):
    """Raw grids are accumulated block by block; copula grids need every draw for the ranks."""
    if scale == "copula":
        block = generate_arrays(config, workers=workers, block_size=block_size)
        return empirical_copula_density(block, **({"bins": bins} if bins else {}))
    if scale != "raw":
        raise DomainError(f"Unknown grid scale {scale!r} (expected 'raw' or 'copula')")
    kwargs = {}
    if bins:
        kwargs["bins"] = bins
    if range_x is not None:
        kwargs["range_x"] = range_x
    grid = None
    for block in generate_blocks(config, workers=workers, block_size=block_size):
        part = histogram2d(block, **kwargs)
        grid = part if grid is None else grid.merge(part)
    return grid


def scatter_frame(config, gamma, std_mode="t", workers=WORKERS, block_size=BLOCK_SIZE):
    std = threshold_scale(config.nu, std_mode)
    block = generate_arrays(config, workers=workers, block_size=block_size)
    tail = tail_scatter(block, gamma, std)
    return pd.DataFrame({"u": tail.u, "v": tail.v})
