"""Absolute-error (L1) risks of the MLE and of the coordinatewise Beta
posterior median, the table generator over uniform parameter samples, and
the L1/L2 density-distance scalings for equal-measure partitions."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .montecarlo import DEFAULT_SEED, sample_uniform_simplex_array
from .risk import (
    ModelDims,
    SymmetricPrior,
    ThetaLike,
    as_prob_array,
    bayes_squared_risk,
    mle_squared_risk,
)
from .special import beta_median, binomial_weights

#: Start-weight exponent below which the multiplicative binomial recurrence
#: would begin too close to underflow; those coordinates take the
#: exp(log-gamma) path instead.
_RECURRENCE_MIN_LOG_START = -600.0

#: Coordinates per evaluation block; keeps the recurrence working set small.
_BLOCK = 1 << 20


@lru_cache(maxsize=128)
def posterior_median_targets(k: int, n: int) -> np.ndarray:
    """Posterior-median estimate by observed count, under the mass-one prior.

    Entry r is the median of Beta(1/k + r, n + 1 - r - 1/k), the marginal
    posterior of one cell probability after seeing it r times in n draws
    with 1/k prior mass per cell.  Read-only and cached per (k, n).
    """
    if k < 2:
        raise ValueError(f"need at least 2 cells, got k={k}")
    if n < 1:
        raise ValueError(f"need at least 1 observation, got n={n}")
    inv_k = 1.0 / k
    med = np.array([beta_median(inv_k + r, n + 1.0 - r - inv_k) for r in range(n + 1)])
    med.flags.writeable = False
    return med


def expected_abs_deviation(
    p: np.ndarray, n: int, targets: Sequence[np.ndarray], workers: int = 1
) -> list[np.ndarray]:
    """E|t_R - p| with R ~ Binomial(n, p), one output array per target vector t.

    The double sum over counts is evaluated exactly for every coordinate of
    ``p``.  Weights follow the multiplicative binomial recurrence wherever
    the starting weight (1-p)^n (or its mirror p^n, with targets reversed)
    is comfortably representable; the remaining coordinates use rows of
    exp(log-gamma) weights.  Blocks of coordinates may be evaluated on a
    thread pool; outputs land in disjoint slices so the result does not
    depend on scheduling.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise ValueError("p must be one-dimensional")
    if np.any(p < 0.0) or np.any(p > 1.0) or not np.all(np.isfinite(p)):
        raise ValueError("p must lie in [0, 1]")
    for t in targets:
        if len(t) != n + 1:
            raise ValueError("each target vector needs n + 1 entries")
    outs = [np.empty_like(p) for _ in targets]
    blocks = [(lo, min(lo + _BLOCK, p.size)) for lo in range(0, p.size, _BLOCK)]

    def run(block):
        lo, hi = block
        sl = slice(lo, hi)
        _abs_deviation_block(p[sl], n, targets, [o[sl] for o in outs])

    if workers <= 1 or len(blocks) <= 1:
        for b in blocks:
            run(b)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, blocks))
    return outs


def _abs_deviation_block(
    p: np.ndarray, n: int, targets: Sequence[np.ndarray], outs: list[np.ndarray]
) -> None:
    with np.errstate(divide="ignore"):
        log_lo = n * np.log1p(-p)
        log_hi = n * np.log(np.where(p > 0.0, p, 1.0))
        log_hi = np.where(p > 0.0, log_hi, -np.inf)
    direct = log_lo >= _RECURRENCE_MIN_LOG_START
    mirror = ~direct & (log_hi >= _RECURRENCE_MIN_LOG_START)
    rest = ~direct & ~mirror

    if np.any(direct):
        vals = _recurrence_pass(p[direct], p[direct], n, targets)
        for o, v in zip(outs, vals):
            o[direct] = v
    if np.any(mirror):
        reversed_targets = [t[::-1] for t in targets]
        vals = _recurrence_pass(1.0 - p[mirror], p[mirror], n, reversed_targets)
        for o, v in zip(outs, vals):
            o[mirror] = v
    if np.any(rest):
        for i in np.flatnonzero(rest):
            w = binomial_weights(n, float(p[i]))
            for o, t in zip(outs, targets):
                o[i] = float(w @ np.abs(t - p[i]))


def _recurrence_pass(
    weight_p: np.ndarray, value_p: np.ndarray, n: int, targets: Sequence[np.ndarray]
) -> list[np.ndarray]:
    """Accumulate sum_r P(R=r | n, weight_p) * |t_r - value_p| for each t."""
    w = np.exp(n * np.log1p(-weight_p))
    odds = weight_p / (1.0 - weight_p)
    step = (n - np.arange(n + 1)) / (np.arange(n + 1) + 1.0)
    acc = [np.zeros_like(value_p) for _ in targets]
    buf = np.empty_like(value_p)
    for r in range(n + 1):
        for t, a in zip(targets, acc):
            np.subtract(t[r], value_p, out=buf)
            np.abs(buf, out=buf)
            buf *= w
            a += buf
        if r < n:
            w *= odds
            w *= step[r]
    return acc


def mle_abs_risk(theta: ThetaLike, n: int) -> float:
    """Expected L1 distance of the cell-frequency estimator from theta."""
    arr = as_prob_array(theta)
    if n < 1:
        raise ValueError(f"need at least 1 observation, got n={n}")
    t = np.arange(n + 1) / n
    return float(expected_abs_deviation(arr, n, [t])[0].sum())


def bayes_abs_risk(theta: ThetaLike, n: int) -> float:
    """Expected L1 distance of the posterior-median estimator from theta.

    The estimator is pinned to the mass-one prior (1/k per cell), matching
    its role as a piecewise-density estimate on an equal-measure partition.
    """
    arr = as_prob_array(theta)
    if n < 1:
        raise ValueError(f"need at least 1 observation, got n={n}")
    med = posterior_median_targets(arr.size, n)
    return float(expected_abs_deviation(arr, n, [med])[0].sum())


@dataclass(frozen=True)
class L1TableCell:
    """Mean L1 risks of both estimators over a uniform parameter sample."""

    k: int
    n: int
    mle_mean: float
    bayes_mean: float
    mle_std_error: float
    bayes_std_error: float
    samples: int


def avg_l1_table(
    k_values: Iterable[int],
    n_values: Sequence[int],
    theta_samples: int = 10_000,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> list[L1TableCell]:
    """Average L1 risks on a (k, n) grid over uniform simplex samples.

    One parameter sample of ``theta_samples`` points is drawn per k and
    reused for every n, like the dominance sweeps.  Standard errors are the
    across-sample standard deviations divided by sqrt(samples).
    """
    if theta_samples < 1:
        raise ValueError(f"need at least 1 sample, got {theta_samples}")
    cells: list[L1TableCell] = []
    for k in k_values:
        coords = sample_uniform_simplex_array(k, theta_samples, seed).ravel()
        for n in n_values:
            med = posterior_median_targets(k, n)
            freq = np.arange(n + 1) / n
            per_coord = expected_abs_deviation(coords, n, [freq, med], workers=workers)
            per_theta = [v.reshape(theta_samples, k).sum(axis=1) for v in per_coord]
            cells.append(
                L1TableCell(
                    k=k,
                    n=n,
                    mle_mean=float(per_theta[0].mean()),
                    bayes_mean=float(per_theta[1].mean()),
                    mle_std_error=float(per_theta[0].std(ddof=1) / math.sqrt(theta_samples))
                    if theta_samples > 1
                    else 0.0,
                    bayes_std_error=float(per_theta[1].std(ddof=1) / math.sqrt(theta_samples))
                    if theta_samples > 1
                    else 0.0,
                    samples=theta_samples,
                )
            )
    return cells


@dataclass(frozen=True)
class DensityScaling:
    """Equal-measure partition of a state space of total volume ``omega_total``
    into ``k`` cells, for converting estimation risks into density distances."""

    omega_total: float
    k: int

    def __post_init__(self) -> None:
        if not self.omega_total > 0.0:
            raise ValueError(f"total volume must be positive, got {self.omega_total}")
        if self.k < 2:
            raise ValueError(f"need at least 2 cells, got k={self.k}")


def l2_density_distance(
    dims: ModelDims,
    prior: SymmetricPrior,
    theta: ThetaLike,
    scaling: DensityScaling,
    estimator: str,
) -> float:
    """L2 distance between the piecewise density and its estimate.

    With k equal-measure cells the distance is sqrt(k/omega_total) times
    the root of the corresponding squared-error risk.
    """
    if scaling.k != dims.k:
        raise ValueError(f"scaling has k={scaling.k} cells but dims.k={dims.k}")
    if estimator == "mle":
        risk = mle_squared_risk(theta, dims.n)
    elif estimator == "bayes":
        risk = bayes_squared_risk(theta, dims.n, prior)
    else:
        raise ValueError(f"estimator must be 'mle' or 'bayes', got {estimator!r}")
    return math.sqrt(scaling.k / scaling.omega_total) * math.sqrt(risk)
