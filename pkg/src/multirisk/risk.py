"""Squared-error risks of the MLE and Dirichlet-posterior-mean estimators,
the dominance threshold on the squared norm, and pointwise comparisons."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

#: Largest tolerated drift of input probabilities from sum 1 before rejection;
#: anything within it is renormalized (CSV-sourced values carry rounding error).
SUM_SLACK = 1e-9


@dataclass(frozen=True)
class ModelDims:
    """Multinomial problem size: ``k`` cells, ``n`` observations."""

    k: int
    n: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"need at least 2 cells, got k={self.k}")
        if self.n < 1:
            raise ValueError(f"need at least 1 observation, got n={self.n}")


@dataclass(frozen=True)
class SymmetricPrior:
    """Exchangeable Dirichlet prior, described by its concentration rule.

    ``constant(c)`` puts ``c`` on every cell (``c = 1`` is the uniform,
    non-informative prior), ``inverse_k()`` puts ``1/k`` per cell, and
    ``scaled_inverse_k(c)`` spreads a fixed total mass ``c`` as ``c/k``
    per cell.
    """

    rule: str
    c: float = 1.0

    _RULES = ("constant", "inverse_k", "scaled_inverse_k")

    def __post_init__(self) -> None:
        if self.rule not in self._RULES:
            raise ValueError(f"unknown prior rule {self.rule!r}")
        if self.rule != "inverse_k" and not self.c > 0.0:
            raise ValueError(f"concentration must be positive, got {self.c}")

    @classmethod
    def constant(cls, c: float = 1.0) -> "SymmetricPrior":
        return cls("constant", float(c))

    @classmethod
    def uniform(cls) -> "SymmetricPrior":
        return cls("constant", 1.0)

    @classmethod
    def inverse_k(cls) -> "SymmetricPrior":
        return cls("inverse_k")

    @classmethod
    def scaled_inverse_k(cls, c: float) -> "SymmetricPrior":
        return cls("scaled_inverse_k", float(c))

    def concentration(self, k: int, n: int) -> float:
        """Per-cell Dirichlet parameter resolved for a (k, n) problem."""
        if k < 2:
            raise ValueError(f"need at least 2 cells, got k={k}")
        if self.rule == "constant":
            return self.c
        if self.rule == "inverse_k":
            return 1.0 / k
        return self.c / k

    def describe(self) -> str:
        if self.rule == "constant":
            return "uniform" if self.c == 1.0 else f"constant({self.c:g})"
        if self.rule == "inverse_k":
            return "inverse-k"
        return f"scaled-inverse-k({self.c:g})"


class ProbVector:
    """Point on the probability simplex: k >= 2 nonnegative entries summing to 1.

    Inputs whose sum drifts from 1 by at most ``SUM_SLACK`` are renormalized;
    larger deviations are rejected.
    """

    __slots__ = ("values",)

    def __init__(self, components: Union[Iterable[float], np.ndarray]):
        arr = np.array(components, dtype=float)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("a probability vector needs at least 2 components")
        if not np.all(np.isfinite(arr)):
            raise ValueError("components must be finite")
        if np.any(arr < 0.0):
            raise ValueError("components must be nonnegative")
        total = float(arr.sum())
        if abs(total - 1.0) > SUM_SLACK:
            raise ValueError(f"components sum to {total!r}, not 1")
        arr /= total
        arr.flags.writeable = False
        self.values = arr

    @classmethod
    def barycenter(cls, k: int) -> "ProbVector":
        """The center point (1/k, ..., 1/k), closest on the simplex to the origin."""
        return cls(np.full(k, 1.0 / k))

    @classmethod
    def vertex(cls, k: int, index: int = 0) -> "ProbVector":
        z = np.zeros(k)
        z[index] = 1.0
        return cls(z)

    @property
    def k(self) -> int:
        return self.values.size

    @property
    def norm_sq(self) -> float:
        return float(self.values @ self.values)

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return f"ProbVector({self.values.tolist()!r})"


ThetaLike = Union[ProbVector, Iterable[float], np.ndarray]


def as_prob_array(theta: ThetaLike) -> np.ndarray:
    """Validated 1-D probability array from a ProbVector or raw components."""
    if isinstance(theta, ProbVector):
        return theta.values
    return ProbVector(theta).values


@dataclass(frozen=True)
class RiskComparison:
    """Pointwise squared-error risks of both estimators and who wins.

    ``mle_wins`` is True exactly when the MLE risk is no larger than the
    posterior-mean risk, which happens exactly when the squared norm of the
    parameter reaches ``threshold_r``.  Ties count for the MLE.
    """

    mle_risk: float
    bayes_risk: float
    mle_wins: bool
    threshold_r: float


def mle_squared_risk(theta: ThetaLike, n: int) -> float:
    """Expected squared error of the cell-frequency estimator at theta."""
    arr = as_prob_array(theta)
    if n < 1:
        raise ValueError(f"need at least 1 observation, got n={n}")
    return (1.0 - float(arr @ arr)) / n


def bayes_squared_risk(theta: ThetaLike, n: int, prior: SymmetricPrior) -> float:
    """Expected squared error of the Dirichlet posterior mean at theta."""
    arr = as_prob_array(theta)
    if n < 1:
        raise ValueError(f"need at least 1 observation, got n={n}")
    k = arr.size
    c = prior.concentration(k, n)
    denom = (n + k * c) ** 2
    s2 = float(arr @ arr)
    return (n - k * c * c) / denom + (k * k * c * c - n) * s2 / denom


def dominance_threshold(dims: ModelDims, prior: SymmetricPrior) -> float:
    """Squared-norm level above which the MLE has the lower squared-error risk.

    Decreasing in the concentration; tends to 1 as the concentration
    vanishes (the posterior mean then collapses onto the MLE).
    """
    k, n = dims.k, dims.n
    c = prior.concentration(k, n)
    r = (2.0 * n + (n + k) * c) / (2.0 * n + (k + k * n) * c)
    # mathematically in (1/k, 1); the upper end can round to 1.0 for
    # concentrations below float resolution
    if not 1.0 / k < r <= 1.0:
        raise ValueError(f"threshold {r!r} fell outside (1/k, 1]")
    return r


def compare_at(theta: ThetaLike, dims: ModelDims, prior: SymmetricPrior) -> RiskComparison:
    """Evaluate both risks at theta and test which estimator wins there."""
    arr = as_prob_array(theta)
    if arr.size != dims.k:
        raise ValueError(f"theta has {arr.size} components but dims.k={dims.k}")
    r = dominance_threshold(dims, prior)
    return RiskComparison(
        mle_risk=mle_squared_risk(arr, dims.n),
        bayes_risk=bayes_squared_risk(arr, dims.n, prior),
        mle_wins=bool(float(arr @ arr) >= r),
        threshold_r=r,
    )


def mle_margin_uniform(norm_sq, k: int, n: int):
    """Sign form of the comparison under the uniform prior (concentration 1).

    Nonnegative exactly where the MLE has the lower risk; affine in the
    squared norm, so it vectorizes over arrays of norms.
    """
    return -3.0 * n - k + (n * k + 2.0 * n + k) * np.asarray(norm_sq)


def mle_margin_scaled(norm_sq, k: int, n: int, total_mass: float):
    """Sign form when a fixed total prior mass is spread as total_mass/k per cell."""
    c = total_mass
    return -c * n / k - 2.0 * n - c + (2.0 * n + c + n * c) * np.asarray(norm_sq)


def mle_margin_constant(norm_sq, k: int, n: int, c: float):
    """Sign form for a constant per-cell concentration c."""
    return -2.0 * n - c * (k + n) + (2.0 * n + c * (k + k * n)) * np.asarray(norm_sq)


def mle_margin(norm_sq, dims: ModelDims, prior: SymmetricPrior):
    """Prior-appropriate sign form; nonnegative exactly where the MLE wins."""
    if prior.rule == "constant":
        if prior.c == 1.0:
            return mle_margin_uniform(norm_sq, dims.k, dims.n)
        return mle_margin_constant(norm_sq, dims.k, dims.n, prior.c)
    if prior.rule == "scaled_inverse_k":
        return mle_margin_scaled(norm_sq, dims.k, dims.n, prior.c)
    return mle_margin_scaled(norm_sq, dims.k, dims.n, 1.0)
