"""Uniform sampling on the simplex and Monte Carlo estimates of the
fraction where each estimator wins."""

from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .risk import ModelDims, ProbVector, SymmetricPrior, dominance_threshold

#: Documented default seed; every sampling entry point takes an explicit
#: seed and falls back to this one.
DEFAULT_SEED = 314159

#: Target number of scalar draws per sampling chunk.  Chunk boundaries are a
#: pure function of k, never of worker count, so results are reproducible
#: under any scheduling.
_CHUNK_SCALARS = 1 << 22

#: The sample-size grid n = k, 2k, 3k, 4k, k^2, ..., 4k^4 used by the
#: dominance-fraction sweeps.
STANDARD_SWEEP_RULES = (
    "k", "2k", "3k", "4k",
    "k2", "2k2", "3k2", "4k2",
    "k3", "2k3", "3k3", "4k3",
    "k4", "2k4", "3k4", "4k4",
)

_RULE_RE = re.compile(r"^(\d*)k(\d*)$")


def resolve_sample_size(rule: "str | int", k: int) -> int:
    """Sample size for a grid rule: an integer literal or '<m>k<p>' = m * k**p."""
    if isinstance(rule, int):
        n = rule
    else:
        text = rule.strip()
        if text.isdigit():
            n = int(text)
        else:
            m = _RULE_RE.match(text)
            if m is None:
                raise ValueError(f"cannot parse sample-size rule {rule!r}")
            coeff = int(m.group(1)) if m.group(1) else 1
            power = int(m.group(2)) if m.group(2) else 1
            n = coeff * k**power
    if n < 1:
        raise ValueError(f"rule {rule!r} gives n={n} < 1")
    return n


@dataclass(frozen=True)
class MonteCarloEstimate:
    """A Monte Carlo estimate with its provenance.

    For proportions the standard error is sqrt(p*(1-p)/samples).  When no
    hits at all were observed the estimate is reported as 0 together with
    the one-sided 95% rule-of-three bound 3/samples in ``zero_hit_bound``.
    """

    estimate: float
    std_error: float
    samples: int
    seed: int
    zero_hit_bound: float | None = None


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _chunk_bounds(count: int, k: int) -> list[tuple[int, int, int]]:
    size = max(1, _CHUNK_SCALARS // k)
    return [(i, lo, min(lo + size, count)) for i, lo in enumerate(range(0, count, size))]


def _map_chunks(tasks: Sequence, fn: Callable, workers: int) -> list:
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def sample_uniform_simplex_array(k: int, count: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """(count, k) array of exactly uniform simplex points.

    Each row is k independent unit-rate exponentials divided by their sum,
    which is a flat Dirichlet draw and hence uniform on the simplex.
    Deterministic in (k, count, seed): chunk c is drawn from a Philox
    stream keyed by (seed, c).
    """
    if k < 2:
        raise ValueError(f"need at least 2 cells, got k={k}")
    if count < 1:
        raise ValueError(f"need at least 1 sample, got count={count}")
    out = np.empty((count, k))
    for index, lo, hi in _chunk_bounds(count, k):
        e = _chunk_rng(seed, index).standard_exponential((hi - lo, k))
        out[lo:hi] = e / e.sum(axis=1, keepdims=True)
    return out


def sample_uniform_simplex(k: int, count: int, seed: int = DEFAULT_SEED) -> list[ProbVector]:
    """Uniform simplex points as ProbVector instances (see the array variant)."""
    arr = sample_uniform_simplex_array(k, count, seed)
    return [ProbVector(row) for row in arr]


def _chunk_norm_sq(seed: int, index: int, rows: int, k: int) -> np.ndarray:
    # |e/sum(e)|^2 == sum(e^2) / sum(e)^2, skipping the normalized matrix
    e = _chunk_rng(seed, index).standard_exponential((rows, k))
    ssq = np.einsum("ij,ij->i", e, e)
    s = e.sum(axis=1)
    return ssq / (s * s)


def estimate_tail_fraction(
    k: int,
    threshold: float,
    count: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Monte Carlo estimate of the simplex fraction with squared norm >= threshold."""
    if k < 2:
        raise ValueError(f"need at least 2 cells, got k={k}")
    if count < 1:
        raise ValueError(f"need at least 1 sample, got count={count}")

    def hits_in(task):
        index, lo, hi = task
        return int(np.count_nonzero(_chunk_norm_sq(seed, index, hi - lo, k) >= threshold))

    hits = sum(_map_chunks(_chunk_bounds(count, k), hits_in, workers))
    return _proportion_estimate(hits, count, seed)


def estimate_ball_fraction(
    k: int,
    r: float,
    count: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Monte Carlo estimate of the simplex fraction with squared norm <= r.

    Complement of ``estimate_tail_fraction`` on the same draws (the
    boundary itself carries no probability mass).
    """
    tail = estimate_tail_fraction(k, r, count, seed, workers)
    hits = round((1.0 - tail.estimate) * count)
    return _proportion_estimate(hits, count, seed)


def _proportion_estimate(hits: int, count: int, seed: int) -> MonteCarloEstimate:
    p = hits / count
    return MonteCarloEstimate(
        estimate=p,
        std_error=math.sqrt(p * (1.0 - p) / count),
        samples=count,
        seed=seed,
        zero_hit_bound=3.0 / count if hits == 0 else None,
    )


def estimate_mle_better_proportion(
    dims: ModelDims,
    prior: SymmetricPrior,
    count: int = 500_000,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Fraction of uniform simplex draws where the MLE has the lower risk.

    Equivalent to the fraction of draws whose squared norm reaches the
    dominance threshold, which is how it is evaluated.
    """
    if count < 1000:
        raise ValueError(f"need at least 1000 samples, got count={count}")
    threshold = dominance_threshold(dims, prior)
    return estimate_tail_fraction(dims.k, threshold, count, seed, workers)


@dataclass(frozen=True)
class SweepCell:
    """One (k, n) cell of a dominance-fraction sweep."""

    k: int
    n: int
    rule: str
    result: MonteCarloEstimate


def proportion_sweep(
    k_values: Iterable[int],
    n_rules: Sequence["str | int"],
    prior: SymmetricPrior,
    count: int = 500_000,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> list[SweepCell]:
    """MLE-favoring fraction over a (k, n) grid, one shared sample per k.

    For each k a single uniform sample of ``count`` points is drawn and every
    n on the grid is evaluated against it, so each cell matches a standalone
    ``estimate_mle_better_proportion`` call with the same count and seed
    bit for bit.
    """
    cells: list[SweepCell] = []
    for k in k_values:
        ns = [resolve_sample_size(rule, k) for rule in n_rules]
        thresholds = np.array(
            [dominance_threshold(ModelDims(k, n), prior) for n in ns]
        )

        def hits_in(task):
            index, lo, hi = task
            norms = _chunk_norm_sq(seed, index, hi - lo, k)
            return (norms[:, None] >= thresholds[None, :]).sum(axis=0)

        hits = sum(_map_chunks(_chunk_bounds(count, k), hits_in, workers))
        for rule, n, h in zip(n_rules, ns, hits):
            cells.append(
                SweepCell(k=k, n=n, rule=str(rule), result=_proportion_estimate(int(h), count, seed))
            )
    return cells
