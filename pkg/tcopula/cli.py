"""Command-line front end.

Every command writes one CSV file (or stdout with ``--out -``) headed by a
block of "# key: value" manifest lines recording the tool version, the fully
resolved configuration and the threshold convention.

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""

import argparse
import logging
import math
import os
import sys

from tcopula import config, reports
from tcopula.copulas.base import CopulaMethod, SimConfig
from tcopula.errors import DomainError, OutputError, UsageError
from tcopula.estimators.tails import STD_MODES, threshold_scale
from tcopula.storage.csv_store import RunManifest, write_csv

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"
LOG_DATEFMT = "%H:%M:%S"


def setup_logging(verbosity=0):
    """Log to TCOPULA_LOG_FILE when set, otherwise to stderr.

    A no-op when the root logger already has handlers.
    """
    if verbosity >= 2 or config.DEBUG:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    kwargs = {"filename": config.LOG_FILE, "filemode": "a+"} if config.LOG_FILE else {"stream": sys.stderr}
    logging.basicConfig(format=LOG_FORMAT, datefmt=LOG_DATEFMT, level=level, **kwargs)


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------

def positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def seed_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be nonnegative, got {value}")
    return value


def grid_range(text):
    """Parse "lo:hi"; pass negative bounds as --range=-10:10."""
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            raise ValueError
        bounds = float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if not bounds[0] < bounds[1]:
        raise argparse.ArgumentTypeError(f"range must have lo < hi, got {text!r}")
    return bounds


def float_list(text):
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}") from None


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_run_args(parser, method=True):
    if method:
        parser.add_argument(
            "--method", type=str.lower, choices=[m.value for m in CopulaMethod], default=config.DEFAULT_METHOD,
        )
    parser.add_argument("--rho", type=float, default=config.DEFAULT_RHO)
    parser.add_argument("--nu", type=float, default=config.DEFAULT_NU)
    parser.add_argument("--samples", type=positive_int, default=config.DEFAULT_SAMPLES)
    parser.add_argument("--seed", type=seed_int, default=None, help="default: $TCOPULA_SEED, then 1")
    parser.add_argument("--workers", type=positive_int, default=config.WORKERS)
    parser.add_argument("--block-size", type=positive_int, default=config.BLOCK_SIZE)


def _add_std_mode(parser):
    parser.add_argument(
        "--std-mode", choices=STD_MODES, default=config.DEFAULT_STD_MODE,
        help="threshold unit: t = sqrt(nu/(nu-2)), unit = 1",
    )


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--out", default="-", help="output path, '-' for stdout")

    parser = argparse.ArgumentParser(prog="tcopula", description="Student-t copula simulations and tail statistics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduction-table", parents=[common], help="correlation reduction factor by nu")
    p.add_argument("--nu-list", type=float_list, default=list(config.REDUCTION_TABLE_NUS))
    p.set_defaults(handler=cmd_reduction_table)

    p = sub.add_parser("tail-table", parents=[common], help="tail correlation per gamma and method")
    _add_run_args(p, method=False)
    p.add_argument("--gamma-max", type=int, default=config.DEFAULT_GAMMA_MAX)
    _add_std_mode(p)
    p.set_defaults(handler=cmd_tail_table)

    p = sub.add_parser("tail-counts", parents=[common], help="joint exceedance counts per gamma and method")
    _add_run_args(p, method=False)
    p.add_argument("--gamma-max", type=int, default=config.DEFAULT_GAMMA_MAX)
    _add_std_mode(p)
    p.set_defaults(handler=cmd_tail_counts)

    p = sub.add_parser("sample", parents=[common], help="raw (u, v) pairs")
    _add_run_args(p)
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("density", parents=[common], help="binned density on the raw or copula scale")
    _add_run_args(p)
    p.add_argument("--scale", choices=["raw", "copula"], default="raw")
    p.add_argument("--bins", type=positive_int, default=None)
    p.add_argument("--range", type=grid_range, default=grid_range(config.PDF_RANGE), dest="grid_range")
    p.set_defaults(handler=cmd_density)

    p = sub.add_parser("tail-curve", parents=[common], help="model tail correlation by threshold")
    p.add_argument("--rho", type=float, default=config.DEFAULT_RHO)
    p.add_argument("--nu", type=float, default=config.DEFAULT_NU)
    p.add_argument("--mu", type=float_list, default=None, help="thresholds, default gamma*sqrt(nu/(nu-2)) for gamma=2..gamma-max")
    p.add_argument("--gamma-max", type=int, default=config.DEFAULT_GAMMA_MAX)
    p.add_argument("--law", choices=["t", "normal"], default="t")
    p.set_defaults(handler=cmd_analytic_tail_curve)

    p = sub.add_parser("scatter", parents=[common], help="pairs in the tail u > gamma*std")
    _add_run_args(p)
    p.add_argument("--gamma", type=float, default=2.0)
    _add_std_mode(p)
    p.set_defaults(handler=cmd_scatter, samples=config.FIGURE_SAMPLES)

    p = sub.add_parser("summary", parents=[common], help="correlation and margin checks per method")
    _add_run_args(p, method=False)
    p.add_argument("--ks-samples", type=positive_int, default=reports.KS_SAMPLES)
    p.set_defaults(handler=cmd_summary)

    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def resolve_seed(seed):
    """Flag, then $TCOPULA_SEED, then the built-in default."""
    if seed is not None:
        return seed
    env = os.getenv("TCOPULA_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TCOPULA_SEED must be an integer, got {env!r}") from None
    return config.DEFAULT_SEED


def sim_config(args, method=None):
    return SimConfig(
        method=method or getattr(args, "method", config.DEFAULT_METHOD),
        rho=args.rho,
        nu=args.nu,
        n_samples=args.samples,
        seed=resolve_seed(args.seed),
    )


def _std_description(nu, std_mode):
    return f"{std_mode} ({threshold_scale(nu, std_mode)!r})"


def _template_config(args):
    """Resolved config shared by the per-method runs."""
    template = sim_config(args, method=CopulaMethod.SAME_CHI2)
    resolved = template.to_dict()
    resolved["methods"] = [m.value for m in reports.METHODS]
    del resolved["method"]
    return template, resolved


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_reduction_table(args):
    frame = reports.reduction_table(args.nu_list)
    manifest = RunManifest(command="reduction-table", config={"nu_list": args.nu_list})
    write_csv(frame, args.out, manifest)


def _tail_run(args):
    if args.gamma_max < 1:
        raise UsageError(f"--gamma-max must be at least 1, got {args.gamma_max}")
    template, resolved = _template_config(args)
    gammas = reports.gamma_range(args.gamma_max)
    accumulators = reports.tail_accumulators(
        template, gammas, args.std_mode, workers=args.workers, block_size=args.block_size,
    )
    resolved.update(gamma_max=args.gamma_max, block_size=args.block_size)
    return accumulators, resolved, _std_description(template.nu, args.std_mode)


def cmd_tail_table(args):
    accumulators, resolved, std = _tail_run(args)
    manifest = RunManifest(command="tail-table", config=resolved, threshold_std=std)
    write_csv(reports.tail_table(accumulators), args.out, manifest)


def cmd_tail_counts(args):
    accumulators, resolved, std = _tail_run(args)
    manifest = RunManifest(command="tail-counts", config=resolved, threshold_std=std)
    write_csv(reports.tail_counts(accumulators), args.out, manifest)


def cmd_sample(args):
    sim = sim_config(args)
    frame, statistics = reports.sample_frame(sim, workers=args.workers, block_size=args.block_size)
    manifest = RunManifest(
        command="sample",
        config={**sim.to_dict(), "block_size": args.block_size},
        statistics=statistics,
    )
    write_csv(frame, args.out, manifest)


def cmd_density(args):
    sim = sim_config(args)
    grid = reports.density_grid(
        sim, scale=args.scale, bins=args.bins, range_x=args.grid_range,
        workers=args.workers, block_size=args.block_size,
    )
    manifest = RunManifest(
        command="density",
        config={**sim.to_dict(), "block_size": args.block_size},
        grid={
            "scale": grid.scale.value,
            "bins": [grid.bins_x, grid.bins_y],
            "range_u": list(grid.range_x),
            "range_v": list(grid.range_y),
            "out_of_range": grid.out_of_range,
        },
        statistics={"count": grid.total, "bin_center_correlation": grid.correlation()},
    )
    write_csv(grid.to_frame(), args.out, manifest, index=True)


def cmd_analytic_tail_curve(args):
    mu_list = args.mu
    if mu_list is None:
        std = math.sqrt(args.nu / (args.nu - 2)) if args.nu > 2 else 1.0
        mu_list = [g * std for g in reports.gamma_range(args.gamma_max)]
    frame = reports.analytic_tail_curve(args.rho, args.nu, mu_list, law=args.law)
    manifest = RunManifest(
        command="tail-curve",
        config={"rho": args.rho, "nu": args.nu, "law": args.law, "mu": mu_list},
    )
    write_csv(frame, args.out, manifest)


def cmd_scatter(args):
    sim = sim_config(args)
    frame = reports.scatter_frame(
        sim, args.gamma, args.std_mode, workers=args.workers, block_size=args.block_size,
    )
    manifest = RunManifest(
        command="scatter",
        config={**sim.to_dict(), "gamma": args.gamma, "block_size": args.block_size},
        threshold_std=_std_description(sim.nu, args.std_mode),
        statistics={"tail_count": len(frame)},
    )
    write_csv(frame, args.out, manifest)


def cmd_summary(args):
    template, resolved = _template_config(args)
    frame = reports.correlation_summary(
        template, ks_samples=args.ks_samples, workers=args.workers, block_size=args.block_size,
    )
    resolved.update(ks_samples=args.ks_samples, block_size=args.block_size)
    write_csv(frame, args.out, RunManifest(command="summary", config=resolved))


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    setup_logging(args.verbose)
    try:
        args.handler(args)
    except UsageError as e:
        print(f"Usage error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except OutputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    return 0
