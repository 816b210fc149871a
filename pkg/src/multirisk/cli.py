"""Command-line front end: estimator-comparison tables as CSV/JSON.

Subcommands: ``region`` (dominance fractions and bounds), ``avgrisk``
(average-risk comparisons), ``l1`` (absolute-error risk tables), and
``stock`` (the retailer stocking simulation).  Identical flags and seed
produce byte-identical output; exit codes are 0 (ok), 1 (compute error),
2 (usage error).
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import click
import numpy as np

from .absolute import avg_l1_table, bayes_abs_risk, mle_abs_risk
from .average import mle_avg_risk, proportional_decrease
from .montecarlo import (
    DEFAULT_SEED,
    STANDARD_SWEEP_RULES,
    estimate_ball_fraction,
    estimate_mle_better_proportion,
    resolve_sample_size,
)
from .risk import ModelDims, SymmetricPrior, dominance_threshold
from .simplex import (
    MonteCarloNeeded,
    RegionSpec,
    ball_fraction_exact,
    ball_fraction_lower_bound,
    mle_fraction_upper_bound,
)
from .stocking import (
    bundled_distribution_path,
    allocate_stock,
    load_distribution,
    run_stocking_sim,
    zero_floor_adjust,
    ESTIMATOR_NAMES,
    METRIC_NAMES,
)

SEED_ENV_VAR = "MULTIRISK_SEED"


class ComputeError(RuntimeError):
    """A requested computation failed; the message names the failing cell."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved flags for one CLI invocation."""

    ks: tuple[int, ...] = ()
    n_rules: tuple[str, ...] = ()
    prior: Optional[SymmetricPrior] = None
    r_value: Optional[float] = None
    want_exact: bool = False
    want_bound: bool = False
    mc_count: Optional[int] = None
    samples: int = 10_000
    theta: Optional[tuple[float, ...]] = None
    data_path: Optional[str] = None
    customers: int = 100
    reps: int = 1000
    stock_total: int = 1000
    floor_zeros: bool = False
    from_truth: bool = False
    seed: int = DEFAULT_SEED
    out: str = "-"
    fmt: str = "csv"


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: list[tuple]


def _fmt6(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:#.6g}"
    return str(value)


def render_table(table: Table, fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(table.columns)]
        lines.extend(",".join(_fmt6(v) for v in row) for row in table.rows)
        return "\n".join(lines) + "\n"
    records = [
        {col: _jsonable(v) for col, v in zip(table.columns, row)} for row in table.rows
    ]
    return json.dumps(records, indent=2) + "\n"


def _jsonable(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def _write(text: str, out: str) -> None:
    if out == "-":
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise click.UsageError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    return DEFAULT_SEED


def _parse_int_list(text: str, name: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise click.UsageError(f"--{name} must be a comma-separated integer list, got {text!r}")
    if not values:
        raise click.UsageError(f"--{name} must not be empty")
    return values


def _parse_rules(text: str) -> tuple[str, ...]:
    rules: list[str] = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok == "sweep":
            rules.extend(STANDARD_SWEEP_RULES)
        else:
            try:
                resolve_sample_size(tok, 2)
            except ValueError as exc:
                raise click.UsageError(f"--n: {exc}")
            rules.append(tok)
    if not rules:
        raise click.UsageError("--n must not be empty")
    return tuple(rules)


def _build_prior(kind: str, c: Optional[float]) -> SymmetricPrior:
    if kind == "uniform":
        return SymmetricPrior.uniform()
    if kind == "inv-k":
        return SymmetricPrior.inverse_k()
    if c is None:
        raise click.UsageError(f"--prior {kind} requires --c")
    if kind == "const":
        return SymmetricPrior.constant(c)
    return SymmetricPrior.scaled_inverse_k(c)


class CountParam(click.ParamType):
    """Nonnegative integer count, accepting scientific notation like 1e7."""

    name = "count"

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        try:
            as_float = float(value)
        except ValueError:
            self.fail(f"{value!r} is not a count", param, ctx)
        if as_float < 0 or as_float != int(as_float):
            self.fail(f"{value!r} is not a nonnegative integer count", param, ctx)
        return int(as_float)


COUNT = CountParam()


def cmd_region(config: RunConfig) -> Table:
    """Dominance-region fractions: exact values, corner-cut bounds, MC estimates."""
    if config.r_value is not None:
        return _region_explicit(config)
    if not config.n_rules:
        raise click.UsageError("region needs either --n (with --prior) or --R")
    mc = 500_000 if config.mc_count is None else config.mc_count
    columns = (
        "k", "n", "prior", "threshold_r", "mle_exact", "mle_upper_bound",
        "mle_mc", "mc_std_error", "mc_zero_hit_bound", "samples",
    )
    rows = []
    for k in config.ks:
        for rule in config.n_rules:
            name = f"k={k}, n={rule}"
            with _cell(name):
                n = resolve_sample_size(rule, k)
                dims = ModelDims(k, n)
                threshold = dominance_threshold(dims, config.prior)
                exact = _try_exact(RegionSpec(k, threshold), config.want_exact, name)
                bound = _try_bound(dims, config.prior, config.want_bound, name)
                est = (
                    estimate_mle_better_proportion(dims, config.prior, mc, config.seed)
                    if mc > 0
                    else None
                )
            rows.append((
                k, n, config.prior.describe(), threshold, exact, bound,
                est.estimate if est else None,
                est.std_error if est else None,
                est.zero_hit_bound if est else None,
                est.samples if est else None,
            ))
    return Table(columns, rows)


def _region_explicit(config: RunConfig) -> Table:
    anything = config.want_exact or config.want_bound or config.mc_count is not None
    columns = ("k", "r", "exact", "lower_bound", "mc", "mc_std_error", "samples")
    rows = []
    for k in config.ks:
        cell = f"k={k}, R={config.r_value:g}"
        region = RegionSpec(k, config.r_value)
        exact = bound = est = None
        with _cell(cell):
            if config.want_exact or not anything:
                exact = _try_exact(region, config.want_exact, cell)
            if config.want_bound:
                bound = ball_fraction_lower_bound(region)
            if config.mc_count:
                est = estimate_ball_fraction(k, config.r_value, config.mc_count, config.seed)
        rows.append((
            k, config.r_value, exact, bound,
            est.estimate if est else None,
            est.std_error if est else None,
            est.samples if est else None,
        ))
    return Table(columns, rows)


def _try_exact(region: RegionSpec, forced: bool, cell: str):
    # opportunistic unless forced: small dimensions have closed forms
    if not forced and region.k > 3:
        return None
    try:
        return ball_fraction_exact(region)
    except MonteCarloNeeded as exc:
        if forced:
            raise ComputeError(f"({cell}): {exc}") from exc
        return None


def _try_bound(dims: ModelDims, prior: SymmetricPrior, forced: bool, cell: str):
    try:
        return mle_fraction_upper_bound(dims, prior)
    except MonteCarloNeeded as exc:
        if forced:
            raise ComputeError(f"({cell}): {exc}") from exc
        return None


class _cell:
    """Context that rewraps compute failures with the failing cell's name."""

    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and not isinstance(exc, ComputeError) and isinstance(
            exc, (ValueError, ArithmeticError, RuntimeError)
        ):
            raise ComputeError(f"({self.name}): {exc}") from exc
        return False


def cmd_avgrisk(config: RunConfig) -> Table:
    """Average-risk comparison per (k, n): MLE average risk, percentage
    decreases under the uniform and mass-one priors, and the fractions of
    the simplex favoring each posterior mean."""
    mc = 500_000 if config.mc_count is None else config.mc_count
    uniform = SymmetricPrior.uniform()
    inv_k = SymmetricPrior.inverse_k()
    columns = (
        "k", "n", "mle_avg_risk",
        "uniform_decrease_pct", "uniform_vol_prop",
        "invk_decrease_pct", "invk_vol_prop",
        "samples",
    )
    rows = []
    for k in config.ks:
        for rule in config.n_rules:
            with _cell(f"k={k}, n={rule}"):
                n = resolve_sample_size(rule, k)
                dims = ModelDims(k, n)
                uniform_prop = (
                    1.0 - estimate_mle_better_proportion(dims, uniform, mc, config.seed).estimate
                    if mc > 0
                    else None
                )
                invk_prop = 1.0 - mle_fraction_upper_bound(dims, inv_k)
                rows.append((
                    k, n, mle_avg_risk(dims),
                    100.0 * proportional_decrease(dims, uniform), uniform_prop,
                    100.0 * proportional_decrease(dims, inv_k), invk_prop,
                    mc if mc > 0 else None,
                ))
    return Table(columns, rows)


def cmd_l1(config: RunConfig) -> Table:
    """Absolute-error risk: pointwise at --theta, or averaged over uniform
    parameter samples on a (k, n) grid."""
    if config.theta is not None:
        columns = ("k", "n", "mle_abs_risk", "bayes_abs_risk")
        rows = []
        for rule in config.n_rules:
            with _cell(f"theta, n={rule}"):
                n = resolve_sample_size(rule, len(config.theta))
                rows.append((
                    len(config.theta), n,
                    mle_abs_risk(config.theta, n),
                    bayes_abs_risk(config.theta, n),
                ))
        return Table(columns, rows)
    columns = (
        "k", "n", "mle_mean", "bayes_mean", "mle_std_error", "bayes_std_error", "samples",
    )
    rows = []
    for k in config.ks:
        with _cell(f"k={k}"):
            ns = [resolve_sample_size(rule, k) for rule in config.n_rules]
            cells = avg_l1_table([k], ns, config.samples, config.seed)
        rows.extend(
            (c.k, c.n, c.mle_mean, c.bayes_mean, c.mle_std_error, c.bayes_std_error, c.samples)
            for c in cells
        )
    return Table(columns, rows)


def cmd_stock(config: RunConfig) -> dict:
    """Stocking simulation artifacts: JSON report, stock table, per-rep table."""
    path = config.data_path or str(bundled_distribution_path())
    dist = load_distribution(path)
    if config.floor_zeros:
        dist = zero_floor_adjust(dist)

    truth_plan = allocate_stock(dist, config.stock_total)
    stock_columns = ["label", "true_p", "stock_true"]
    if config.from_truth:
        stock_rows = [
            (label, p, int(c))
            for label, p, c in zip(dist.labels, dist.probabilities, truth_plan.counts)
        ]
        return {"stock": Table(tuple(stock_columns), stock_rows)}

    report = run_stocking_sim(
        dist, n=config.customers, reps=config.reps,
        stock_total=config.stock_total, seed=config.seed,
    )
    payload = {
        "reps": report.reps,
        "customers": report.customers,
        "stock_total": report.stock_total,
        "seed": report.seed,
        "distances": {
            name: {
                "mean_l1": stats.mean_l1,
                "mean_l2": stats.mean_l2,
                "mean_linf": stats.mean_linf,
            }
            for name, stats in report.distances.items()
        },
        "win_fractions": report.win_fractions,
        "mean_unsampled": report.mean_unsampled,
        "min_unsampled": report.min_unsampled,
        "stock_plans": {
            name: plan.counts.tolist() for name, plan in report.stock_plans.items()
        },
        "stock_totals": {name: plan.total for name, plan in report.stock_plans.items()},
        "stock_abs_errors": report.stock_errors,
        "labels": list(dist.labels),
    }

    stock_columns += [f"stock_{name}" for name in ESTIMATOR_NAMES]
    stock_rows = []
    for i, label in enumerate(dist.labels):
        stock_rows.append((
            label,
            float(dist.probabilities[i]),
            int(truth_plan.counts[i]),
            *(int(report.stock_plans[name].counts[i]) for name in ESTIMATOR_NAMES),
        ))

    per_rep_columns = ["rep"]
    for name in ESTIMATOR_NAMES:
        per_rep_columns += [f"{name}_{m}" for m in METRIC_NAMES]
    return {
        "report": payload,
        "stock": Table(tuple(stock_columns), stock_rows),
        "per_rep_columns": tuple(per_rep_columns),
        "sim": report,
    }


@click.group()
def cli():
    """Estimator-risk comparisons for multinomial models.

    The default seed is 314159; set MULTIRISK_SEED or pass --seed to
    override it.
    """


def _seed_option(f):
    return click.option("--seed", type=int, default=None,
                        help=f"RNG seed (default {DEFAULT_SEED}; env {SEED_ENV_VAR} overrides)")(f)


def _output_options(f):
    f = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
                     help="output format")(f)
    f = click.option("--out", default="-", help="output path ('-' for stdout)")(f)
    return f


@cli.command()
@click.option("--k", "k_spec", required=True, help="comma-separated cell counts")
@click.option("--n", "n_spec", default=None,
              help="sample sizes: integers or k-grid rules like 2k, k2 (= k^2); "
                   "'sweep' expands to the standard grid")
@click.option("--R", "r_value", type=float, default=None,
              help="explicit squared-norm threshold instead of --n/--prior")
@click.option("--prior", "prior_kind", type=click.Choice(["uniform", "inv-k", "const", "scaled"]),
              default="inv-k", help="concentration rule (default inv-k)")
@click.option("--c", "c_value", type=float, default=None,
              help="concentration for const/scaled priors")
@click.option("--mc", "mc_count", type=COUNT, default=None,
              help="Monte Carlo sample count (0 disables; default 500000 in --n mode)")
@click.option("--exact", is_flag=True, help="require the closed-form fraction (k = 2 or 3)")
@click.option("--bound", is_flag=True, help="require the corner-cut bound")
@_seed_option
@_output_options
def region(k_spec, n_spec, r_value, prior_kind, c_value, mc_count, exact, bound, seed, out, fmt):
    """Fractions of the simplex where each estimator wins."""
    if r_value is not None and n_spec is not None:
        raise click.UsageError("--R conflicts with --n; pick one mode")
    config = RunConfig(
        ks=_parse_int_list(k_spec, "k"),
        n_rules=_parse_rules(n_spec) if n_spec else (),
        prior=_build_prior(prior_kind, c_value),
        r_value=r_value,
        want_exact=exact,
        want_bound=bound,
        mc_count=mc_count,
        seed=_resolve_seed(seed),
        out=out,
        fmt=fmt,
    )
    _run_table(cmd_region, config)


@cli.command()
@click.option("--k", "k_spec", required=True, help="comma-separated cell counts")
@click.option("--n", "n_spec", required=True, help="sample sizes or k-grid rules")
@click.option("--mc", "mc_count", type=COUNT, default=None,
              help="Monte Carlo count for the uniform-prior fraction (default 500000)")
@_seed_option
@_output_options
def avgrisk(k_spec, n_spec, mc_count, seed, out, fmt):
    """Average risks and the percentage decrease of each posterior mean."""
    config = RunConfig(
        ks=_parse_int_list(k_spec, "k"),
        n_rules=_parse_rules(n_spec),
        mc_count=mc_count,
        seed=_resolve_seed(seed),
        out=out,
        fmt=fmt,
    )
    _run_table(cmd_avgrisk, config)


@cli.command()
@click.option("--k", "k_spec", default=None, help="comma-separated cell counts")
@click.option("--n", "n_spec", required=True, help="sample sizes or k-grid rules")
@click.option("--samples", type=COUNT, default=10_000,
              help="uniform parameter samples per k (default 10000)")
@click.option("--theta", "theta_spec", default=None,
              help="pointwise mode: comma-separated probabilities")
@_seed_option
@_output_options
def l1(k_spec, n_spec, samples, theta_spec, seed, out, fmt):
    """Absolute-error risk tables, or pointwise values at --theta."""
    if theta_spec is not None and k_spec is not None:
        raise click.UsageError("--theta conflicts with --k (k is the length of theta)")
    if theta_spec is None and k_spec is None:
        raise click.UsageError("need either --k or --theta")
    theta = None
    if theta_spec is not None:
        try:
            theta = tuple(float(tok) for tok in theta_spec.split(",") if tok.strip())
        except ValueError:
            raise click.UsageError(f"--theta must be a comma-separated number list, got {theta_spec!r}")
    config = RunConfig(
        ks=_parse_int_list(k_spec, "k") if k_spec else (),
        n_rules=_parse_rules(n_spec),
        samples=samples,
        theta=theta,
        seed=_resolve_seed(seed),
        out=out,
        fmt=fmt,
    )
    _run_table(cmd_l1, config)


@cli.command()
@click.option("--data", "data_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="category CSV (default: bundled jean-size distribution)")
@click.option("--n", "customers", type=COUNT, default=100, help="customers per repetition")
@click.option("--reps", type=COUNT, default=1000, help="number of repetitions")
@click.option("--stock-total", type=COUNT, default=1000, help="units of stock to allocate")
@click.option("--floor-zeros", is_flag=True,
              help="floor zero-probability stockable categories before simulating")
@click.option("--from-truth", is_flag=True,
              help="only allocate stock from the true distribution (no simulation)")
@click.option("--emit-stock", "emit_stock", default=None,
              help="also write the per-category stock CSV here")
@click.option("--per-rep", "per_rep", default=None,
              help="also write per-repetition distances CSV here")
@_seed_option
@click.option("--out", default="-", help="report path ('-' for stdout)")
def stock(data_path, customers, reps, stock_total, floor_zeros, from_truth,
          emit_stock, per_rep, seed, out):
    """Stocking simulation on a category distribution; JSON report."""
    config = RunConfig(
        data_path=data_path,
        customers=customers,
        reps=reps,
        stock_total=stock_total,
        floor_zeros=floor_zeros,
        from_truth=from_truth,
        seed=_resolve_seed(seed),
        out=out,
    )
    try:
        artifacts = cmd_stock(config)
    except (ComputeError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if config.from_truth:
        _write(render_table(artifacts["stock"], "csv"), emit_stock or out)
        return
    _write(json.dumps(artifacts["report"], indent=2) + "\n", out)
    if emit_stock:
        _write(render_table(artifacts["stock"], "csv"), emit_stock)
    if per_rep:
        _write(_render_per_rep(artifacts), per_rep)


def _render_per_rep(artifacts) -> str:
    sim = artifacts["sim"]
    columns = artifacts["per_rep_columns"]
    lines = [",".join(columns)]
    per_rep = sim.per_rep_distances
    for rep in range(sim.reps):
        cells = [str(rep)]
        for name in ESTIMATOR_NAMES:
            cells.extend(_fmt6(float(per_rep[name][m][rep])) for m in METRIC_NAMES)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _run_table(fn, config: RunConfig) -> None:
    try:
        table = fn(config)
    except ComputeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    _write(render_table(table, config.fmt), config.out)


def main():
    """Entry point for the console script."""
    cli()


if __name__ == "__main__":
    main()
