"""Retailer stocking simulation: sample customers from a named category
distribution, estimate it three ways, and turn estimates into stock counts."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Sequence, Union

import numpy as np

from .montecarlo import DEFAULT_SEED, _chunk_rng
from .special import beta_median

#: Categories with this label cannot be stocked unless a file says otherwise.
NON_STOCKABLE_LABEL = "No size"

#: Ingestion rejects category files whose probabilities drift from sum 1 by
#: more than this; smaller drift is renormalized away.
INGEST_SUM_SLACK = 1e-6

_REPS_PER_CHUNK = 4096


class IngestionError(ValueError):
    """A category file failed validation; ``row`` is the offending CSV row."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


@dataclass(frozen=True)
class CategoryDistribution:
    """Named categories with probabilities; non-stockable ones can be sampled
    but never receive stock."""

    labels: tuple[str, ...]
    probabilities: np.ndarray
    stockable: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probabilities, dtype=float)
        stock = np.asarray(self.stockable, dtype=bool)
        labels = tuple(self.labels)
        if len(labels) < 2:
            raise ValueError("need at least 2 categories")
        if probs.shape != (len(labels),) or stock.shape != (len(labels),):
            raise ValueError("labels, probabilities and stockable must have equal length")
        if not np.all(np.isfinite(probs)) or np.any(probs < 0.0):
            raise ValueError("probabilities must be finite and nonnegative")
        total = float(probs.sum())
        if abs(total - 1.0) > INGEST_SUM_SLACK:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        probs = probs / total
        probs.flags.writeable = False
        stock = stock.copy()
        stock.flags.writeable = False
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "stockable", stock)

    @property
    def k(self) -> int:
        return len(self.labels)


def bundled_distribution_path() -> Path:
    """Path of the jean-size distribution shipped with the package."""
    return Path(resources.files("multirisk").joinpath("data/jean_sizes.csv"))


def load_distribution(
    source: Union[str, Path, bytes, IO], fmt: str = "csv"
) -> CategoryDistribution:
    """Read a category distribution from CSV.

    Expects a ``label,probability[,stockable]`` header.  A missing
    stockable column defaults to true for every label except
    ``"No size"``.  Probabilities must be nonnegative numbers summing to 1
    within 1e-6; validation failures report the CSV row.
    """
    if fmt.lower() != "csv":
        raise ValueError(f"unsupported format {fmt!r}; only csv is implemented")
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise IngestionError("empty file") from None
    cols = [h.strip().lower() for h in header]
    if cols[:2] != ["label", "probability"] or len(cols) > 3 or (
        len(cols) == 3 and cols[2] != "stockable"
    ):
        raise IngestionError(f"expected header label,probability[,stockable], got {header}")
    has_stockable = len(cols) == 3

    labels: list[str] = []
    probs: list[float] = []
    stockable: list[bool] = []
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(cols):
            raise IngestionError(f"expected {len(cols)} fields, got {len(row)}", row_no)
        label = row[0].strip()
        try:
            p = float(row[1])
        except ValueError:
            raise IngestionError(f"non-numeric probability {row[1]!r}", row_no) from None
        if not math.isfinite(p) or p < 0.0:
            raise IngestionError(f"negative or non-finite probability {p!r}", row_no)
        labels.append(label)
        probs.append(p)
        if has_stockable:
            stockable.append(_parse_bool(row[2], row_no))
        else:
            stockable.append(label != NON_STOCKABLE_LABEL)

    if len(labels) < 2:
        raise IngestionError("need at least 2 categories")
    total = math.fsum(probs)
    if abs(total - 1.0) > INGEST_SUM_SLACK:
        raise IngestionError(f"probabilities sum to {total!r}, not 1 within {INGEST_SUM_SLACK}")
    return CategoryDistribution(tuple(labels), np.array(probs), np.array(stockable))


def _read_text(source: Union[str, Path, bytes, IO]) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8-sig")
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8-sig")
    data = source.read()
    return data.decode("utf-8-sig") if isinstance(data, bytes) else data


def _parse_bool(cell: str, row_no: int) -> bool:
    val = cell.strip().lower()
    if val in ("true", "1", "yes"):
        return True
    if val in ("false", "0", "no"):
        return False
    raise IngestionError(f"cannot parse stockable flag {cell!r}", row_no)


def zero_floor_adjust(raw: CategoryDistribution) -> CategoryDistribution:
    """Give every zero-probability stockable category half the minimum nonzero
    probability, then renormalize.  Identity when nothing is at zero."""
    probs = raw.probabilities
    positive = probs > 0.0
    if not np.any(positive):
        raise ValueError("all probabilities are zero")
    needs_floor = raw.stockable & ~positive
    if not np.any(needs_floor):
        return raw
    floored = probs.copy()
    floored[needs_floor] = probs[positive].min() / 2.0
    return CategoryDistribution(raw.labels, floored / floored.sum(), raw.stockable)


@dataclass(frozen=True)
class StockPlan:
    """Integer stock counts per category; non-stockable categories hold zero."""

    labels: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (len(self.labels),):
            raise ValueError("labels and counts must have equal length")
        if np.any(counts < 0):
            raise ValueError("stock counts must be nonnegative")
        counts.flags.writeable = False
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def allocate_stock(
    estimate: Union[CategoryDistribution, np.ndarray, Sequence[float]],
    stock_total: int = 1000,
    *,
    stockable: Sequence[bool] | None = None,
    labels: Sequence[str] | None = None,
) -> StockPlan:
    """Spread ``stock_total`` units over the stockable categories.

    Each stockable category gets its share of the estimate's stockable mass,
    rounded to the nearest integer (halves away from zero), so totals can
    drift from ``stock_total`` by up to half a unit per category.  The
    share is scale-invariant, which also accommodates estimators whose
    coordinates do not sum to 1.
    """
    if stock_total < 1:
        raise ValueError(f"stock total must be >= 1, got {stock_total}")
    if isinstance(estimate, CategoryDistribution):
        weights = estimate.probabilities
        stockable_arr = estimate.stockable
        label_tuple = estimate.labels
    else:
        weights = np.asarray(estimate, dtype=float)
        if stockable is None:
            raise ValueError("stockable flags are required for raw estimates")
        stockable_arr = np.asarray(stockable, dtype=bool)
        label_tuple = tuple(labels) if labels is not None else tuple(
            str(i) for i in range(weights.size)
        )
    if np.any(weights < 0.0) or not np.all(np.isfinite(weights)):
        raise ValueError("estimate entries must be finite and nonnegative")
    mass = float(weights[stockable_arr].sum())
    if mass <= 0.0:
        raise ValueError("no mass on stockable categories")
    shares = np.where(stockable_arr, weights, 0.0) * (stock_total / mass)
    return StockPlan(label_tuple, np.floor(shares + 0.5).astype(np.int64))


def stock_abs_error(plan: StockPlan, reference: StockPlan) -> int:
    """Total absolute difference in per-category stock counts."""
    if plan.labels != reference.labels:
        raise ValueError("stock plans cover different category sets")
    return int(np.abs(plan.counts - reference.counts).sum())


ESTIMATOR_NAMES = ("mle", "bayes_mean", "bayes_median")
METRIC_NAMES = ("l1", "l2", "linf")


@dataclass(frozen=True)
class EstimatorStats:
    """Mean distances of one estimator from the true distribution."""

    mean_l1: float
    mean_l2: float
    mean_linf: float


@dataclass(frozen=True)
class SimReport:
    """Summary of a stocking simulation run.

    ``win_fractions[e][m]`` is the fraction of repetitions in which
    estimator ``e`` landed strictly closer than the MLE in metric ``m``.
    ``first_rep_estimates`` keeps the estimator vectors of repetition 0 so
    a stock table can be emitted for one concrete sample.
    """

    reps: int
    customers: int
    stock_total: int
    seed: int
    distances: dict[str, EstimatorStats]
    win_fractions: dict[str, dict[str, float]]
    mean_unsampled: float
    min_unsampled: int
    stock_plans: dict[str, StockPlan]
    stock_errors: dict[str, int]
    first_rep_estimates: dict[str, np.ndarray] = field(repr=False, default_factory=dict)
    first_rep_counts: np.ndarray | None = field(repr=False, default=None)
    per_rep_distances: dict[str, dict[str, np.ndarray]] = field(repr=False, default_factory=dict)


def _uniform_prior_median_table(k: int, n: int) -> np.ndarray:
    # marginal posterior of one cell under the uniform prior after seeing it
    # c times in n draws is Beta(1 + c, k - 1 + n - c)
    return np.array([beta_median(1.0 + c, k - 1.0 + n - c) for c in range(n + 1)])


def run_stocking_sim(
    dist: CategoryDistribution,
    n: int = 100,
    reps: int = 1000,
    stock_total: int = 1000,
    seed: int = DEFAULT_SEED,
) -> SimReport:
    """Simulate ``reps`` samples of ``n`` customers and compare estimators.

    Per repetition the category counts feed three estimators: the MLE
    (count/n), the posterior mean under the uniform prior, and the
    coordinatewise posterior median under the uniform prior.  The median
    estimator's coordinates need not sum to 1 and are reported as they
    are.  Distances are measured against the true distribution over all
    categories.  Repetition c*4096+i is drawn from the substream keyed by
    (seed, c), so runs are reproducible under any scheduling.
    """
    if n < 1:
        raise ValueError(f"need at least 1 customer, got n={n}")
    if reps < 1:
        raise ValueError(f"need at least 1 repetition, got reps={reps}")
    k = dist.k
    p0 = dist.probabilities
    medians = _uniform_prior_median_table(k, n)

    counts = np.empty((reps, k), dtype=np.int64)
    for chunk, lo in enumerate(range(0, reps, _REPS_PER_CHUNK)):
        hi = min(lo + _REPS_PER_CHUNK, reps)
        counts[lo:hi] = _chunk_rng(seed, chunk).multinomial(n, p0, size=hi - lo)

    estimates = {
        "mle": counts / n,
        "bayes_mean": (counts + 1.0) / (n + k),
        "bayes_median": medians[counts],
    }
    dist_stats: dict[str, EstimatorStats] = {}
    metric_values: dict[str, dict[str, np.ndarray]] = {}
    for name, est in estimates.items():
        diff = np.abs(est - p0[None, :])
        values = {
            "l1": diff.sum(axis=1),
            "l2": np.sqrt((diff * diff).sum(axis=1)),
            "linf": diff.max(axis=1),
        }
        metric_values[name] = values
        dist_stats[name] = EstimatorStats(
            mean_l1=float(values["l1"].mean()),
            mean_l2=float(values["l2"].mean()),
            mean_linf=float(values["linf"].mean()),
        )
    win_fractions = {
        name: {
            m: float((metric_values[name][m] < metric_values["mle"][m]).mean())
            for m in METRIC_NAMES
        }
        for name in ("bayes_mean", "bayes_median")
    }
    unsampled = (counts == 0).sum(axis=1)

    plans = {"true": allocate_stock(dist, stock_total)}
    errors: dict[str, int] = {}
    for name in ESTIMATOR_NAMES:
        plans[name] = allocate_stock(
            estimates[name][0], stock_total, stockable=dist.stockable, labels=dist.labels
        )
        errors[name] = stock_abs_error(plans[name], plans["true"])

    return SimReport(
        reps=reps,
        customers=n,
        stock_total=stock_total,
        seed=seed,
        distances=dist_stats,
        win_fractions=win_fractions,
        mean_unsampled=float(unsampled.mean()),
        min_unsampled=int(unsampled.min()),
        stock_plans=plans,
        stock_errors=errors,
        first_rep_estimates={name: est[0].copy() for name, est in estimates.items()},
        first_rep_counts=counts[0].copy(),
        per_rep_distances=metric_values,
    )
